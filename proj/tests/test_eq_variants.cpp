#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "womlab/eq_baseline.hpp"
#include "womlab/eq_variants.hpp"
#include "womlab/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

using namespace womlab;

TEST_CASE("full-diffusion condition is decreasing in eta")
{
    for (double delta : {0.1, 0.5, 0.9}) {
        double previous = INFINITY;
        for (int i = 0; i <= 1400; ++i) {
            const double eta = std::pow(10.0, -6.0 + 14.0 * i / 1400.0);
            const double lhs = full_diffusion_lhs(eta, delta);
            CHECK(lhs < previous);
            CHECK(lhs > 0.0);
            previous = lhs;
        }
        CHECK(full_diffusion_lhs(1e-12, delta) == doctest::Approx(1.0 - delta).epsilon(1e-9));
        CHECK(full_diffusion_lhs(1e12, delta) < 1e-11);
    }
}

TEST_CASE("full-diffusion equilibrium")
{
    const MarketParams params{1.0, 0.05, 0.5};
    const auto eq = solve_full_diffusion(params);
    CHECK(eq.stable);
    CHECK(eq.q > 0.0);
    CHECK(eq.q < 1.0);
    CHECK(std::abs(full_diffusion_lhs(eq.law.eta, 0.5) - 0.05) <= 1e-12);
    CHECK(std::abs(eq.residual) <= 1e-10);

    // Passive consumers see both prices, so the indifference condition reads
    // v - E[p] - s = delta (v - E[min]); check it with the long-double law.
    const auto ref = oracle::law(eq.law.eta, 0.05);
    const oracle::Real lhs = 1 - ref.e_p - 0.05L;
    const oracle::Real rhs = 0.5L * (1 - ref.e_pmin);
    CHECK(std::abs(static_cast<double>(lhs - rhs)) <= 1e-10);

    // eta = q / (2 delta (1 - q)) round trip.
    CHECK(eq.q / (2.0 * 0.5 * (1.0 - eq.q)) == doctest::Approx(eq.law.eta).epsilon(1e-12));

    // Only the searchers who happen to visit this firm buy at the top price.
    CHECK(eq.profit == doctest::Approx(0.5 * eq.q * eq.law.p_hi).epsilon(1e-15));
}

TEST_CASE("full diffusion as search costs vanish")
{
    double prev_q = 0.0, prev_p = 0.0;
    for (double s : {0.02, 0.01, 0.005, 0.0025, 1e-4}) {
        const auto eq = solve_full_diffusion({1.0, s, 0.5});
        CHECK(eq.q > prev_q);
        CHECK(eq.law.e_p > prev_p);
        prev_q = eq.q;
        prev_p = eq.law.e_p;
    }
    CHECK(prev_q > 0.999);
    CHECK(prev_p > 0.99);
}

TEST_CASE("full diffusion without an equilibrium")
{
    // The condition never exceeds 1 - delta.
    CHECK_THROWS_AS(solve_full_diffusion({1.0, 0.6, 0.5}), NoEquilibriumError);
    CHECK_THROWS_AS(solve_full_diffusion({1.0, 0.05, 1.0}), InvalidArgument);
}

TEST_CASE("indifference price of buying now against waiting")
{
    const auto d = DegreeDistribution::power_law(-1.0, 100);
    const MarketParams params{1.0, 0.05, 0.9};
    const auto eq = stable_equilibrium(d, params);
    const auto check = rho_solve(d, params, eq.q, eq.law);
    CHECK(check.rhs_monotone);
    CHECK(check.holds);
    CHECK(check.r == eq.law.p_hi);
    REQUIRE(std::isfinite(check.rho));
    CHECK(check.rho >= check.r);
    CHECK(check.rho <= params.v);

    // The waiting gain integrated numerically at the solved rho.
    const oracle::Real eta = eq.law.eta;
    const oracle::Real p_hi = eq.law.p_hi;
    const oracle::Real p_lo = eq.law.p_lo;
    auto F = [&](oracle::Real p) { return p >= p_hi ? oracle::Real{1} : 1 + eta - eta * p_hi / p; };
    const oracle::Real integral = oracle::simpson(F, p_lo, p_hi, 200000) + (check.rho - p_hi);
    const auto ref = oracle::power_law(-1.0, 100);
    const oracle::Real weight = 0.9L * (1 - oracle::pgf(ref, 1 - eq.q / 2));
    const oracle::Real residual = 0.1L * (1 - static_cast<oracle::Real>(check.rho)) - weight * integral;
    CHECK(std::abs(static_cast<double>(residual)) <= 1e-10);
}

TEST_CASE("rho limits")
{
    const auto d = DegreeDistribution::power_law(0.0, 50);
    const PriceLaw law = price_law(5.0, 0.05);

    SUBCASE("no waiting value without diffusion")
    {
        const auto check = rho_solve(d, {1.0, 0.05, 0.0}, 0.5, law);
        CHECK(check.rho == std::numeric_limits<double>::infinity());
        CHECK(check.holds);
    }
    SUBCASE("nobody to learn from when nobody searches")
    {
        double previous = 0.0;
        for (double q : {1e-2, 1e-4, 1e-6, 1e-8}) {
            const auto check = rho_solve(d, {1.0, 0.05, 0.9}, q, law);
            CHECK(check.rho > previous);
            previous = check.rho;
        }
        CHECK(previous == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("domain")
    {
        CHECK_THROWS_AS(rho_solve(d, {1.0, 0.05, 1.0}, 0.5, law), InvalidArgument);
        CHECK_THROWS_AS(rho_solve(d, {1.0, 0.05, 0.5}, 0.0, law), InvalidArgument);
    }
}

TEST_CASE("reservation price stays below rho across parameters")
{
    for (double gamma : {-2.0, -1.0, 0.0, 1.0})
        for (double delta : {0.2, 0.5, 0.9})
            for (double s : {0.005, 0.02, 0.05}) {
                const auto d = DegreeDistribution::power_law(gamma, 100);
                const MarketParams params{1.0, s, delta};
                for (const auto& eq : solve_equilibria(d, params)) {
                    if (!eq.stable) continue;
                    const auto check = rho_solve(d, params, eq.q, eq.law);
                    CAPTURE(gamma);
                    CAPTURE(delta);
                    CAPTURE(s);
                    CHECK(check.rhs_monotone);
                    CHECK(check.holds);
                }
            }
}

TEST_CASE("second-period information probabilities")
{
    SUBCASE("everybody searched")
    {
        const auto d = DegreeDistribution::power_law(-1.0, 100);
        const auto check = information_check(d, 1.0);
        CHECK(check.x == doctest::Approx(1.0 - d.t(1)).epsilon(1e-14));
        CHECK(check.p3_bound == doctest::Approx(pgf(d, d.t(1))).epsilon(1e-14));
        CHECK(check.limit_bound == doctest::Approx(check.p3_bound).epsilon(1e-14));
    }
    SUBCASE("inverse-degree network near full search")
    {
        const auto d = DegreeDistribution::power_law(-1.0, 100);
        const auto ref = oracle::power_law(-1.0, 100);
        const double q = 0.99;
        const auto check = information_check(d, q);
        oracle::Real x = 0;
        for (std::size_t k = 1; k <= 100; ++k)
            x += ref[k - 1] * (1 - std::pow(1 - static_cast<oracle::Real>(q), static_cast<oracle::Real>(k - 1)));
        CHECK(check.x == doctest::Approx(static_cast<double>(x)).epsilon(1e-13));
        CHECK(check.p3_bound == doctest::Approx(static_cast<double>(oracle::pgf(ref, 1 - x))).epsilon(1e-12));
        CHECK(check.p3_bound < d.t(1));
        CHECK(check.holds);
    }
    SUBCASE("two friends each")
    {
        const auto check = information_check(DegreeDistribution::degenerate(2), 0.9);
        CHECK(check.x == doctest::Approx(0.9).epsilon(1e-14));
        CHECK(check.p3_bound == doctest::Approx(0.01).epsilon(1e-12));
        CHECK(check.p2 == doctest::Approx(0.99).epsilon(1e-14));
        CHECK(check.holds);
    }
    SUBCASE("single friends make the check vacuous")
    {
        const auto check = information_check(DegreeDistribution::degenerate(1), 0.5);
        CHECK(check.vacuous);
        CHECK_FALSE(check.holds);
        CHECK(check.x == 0.0);
    }
    CHECK_THROWS_AS(information_check(DegreeDistribution::degenerate(2), 0.0), InvalidArgument);
    CHECK_THROWS_AS(information_check(DegreeDistribution::degenerate(2), 1.5), InvalidArgument);
}

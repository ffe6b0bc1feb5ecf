#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "womlab/eq_asym.hpp"
#include "womlab/eq_baseline.hpp"
#include "womlab/errors.hpp"

#include <algorithm>
#include <cmath>

using namespace womlab;

namespace {

const MarketParams kFig8{1.0, 0.025, 0.92};

const DegreeDistribution& fig8_network()
{
    static const auto d = DegreeDistribution::power_law(-2.5, 5);
    return d;
}

} // namespace

TEST_CASE("cutoff profile")
{
    const auto& d = fig8_network();
    const auto ref = oracle::power_law(-2.5, 5);
    for (std::size_t khat = 1; khat <= 5; ++khat)
        for (double q : {0.0, 0.3, 1.0}) {
            const auto p = cutoff_profile(d, khat, q);
            const auto o = oracle::asym_demand(ref, khat, q, 0.5);
            CHECK(p.w_hat == doctest::Approx(static_cast<double>(o.w_hat)).epsilon(1e-14));
            CHECK(p.w == doctest::Approx(static_cast<double>(o.w)).epsilon(1e-14));
            CHECK((p.w >= 0.0 && p.w <= 1.0));
            CHECK((p.w_hat >= 0.0 && p.w_hat <= 1.0));
        }
    CHECK(cutoff_profile(d, 5, 1.0).w == doctest::Approx(1.0));
    CHECK(cutoff_profile(d, 1, 0.0).w == 0.0);
    CHECK_THROWS_AS(cutoff_profile(d, 0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(cutoff_profile(d, 6, 0.5), InvalidArgument);
    CHECK_THROWS_AS(cutoff_profile(d, 2, 1.5), InvalidArgument);
}

TEST_CASE("comparison weight")
{
    CHECK(comparison_weight(0.0, 4) == 0.0);
    CHECK(comparison_weight(1.0, 1) == 0.0);
    CHECK(comparison_weight(1.0, 3) == doctest::Approx(0.75));
    CHECK(comparison_weight(0.5, 2) == doctest::Approx(0.125));
    for (std::size_t k = 1; k <= 30; ++k)
        for (double w : {1e-8, 0.01, 0.4, 0.99})
            CHECK(comparison_weight(w, k) ==
                  doctest::Approx(static_cast<double>(oracle::passive_outcome(k, w).both)).epsilon(1e-11));
}

TEST_CASE("asymmetric eta against the demand count")
{
    const auto& d = fig8_network();
    const auto ref = oracle::power_law(-2.5, 5);
    for (std::size_t khat = 1; khat <= 5; ++khat)
        for (double q : {0.1, 0.5, 0.9})
            for (double delta : {0.3, 0.92}) {
                CAPTURE(khat);
                CAPTURE(q);
                const auto o = oracle::asym_demand(ref, khat, q, delta);
                const auto shares = asym_shares(d, khat, q, delta);
                CHECK(shares.single == doctest::Approx(static_cast<double>(o.single_per_firm)).epsilon(1e-12));
                CHECK(shares.both == doctest::Approx(static_cast<double>(o.comparers)).epsilon(1e-12));
                CHECK(eta_hat(d, khat, q, delta) ==
                      doctest::Approx(static_cast<double>(o.single_per_firm / o.comparers)).epsilon(1e-12));
            }
}

TEST_CASE("one degree type reduces to the symmetric ratio")
{
    for (std::size_t k : {2u, 3u, 7u})
        for (double q : {0.1, 0.5, 0.9})
            for (double delta : {0.5, 0.9}) {
                const auto d = DegreeDistribution::degenerate(k);
                CHECK(std::abs(eta_hat(d, k, q, delta) - eta_baseline(d, q, delta)) <=
                      1e-12 * eta_baseline(d, q, delta));
            }
    CHECK(eta_hat(DegreeDistribution::degenerate(2), 2, 0.5, 0.5) == doctest::Approx(11.5).epsilon(1e-13));
}

TEST_CASE("asymmetric eta diverges when every consumer searches")
{
    const auto& d = fig8_network();
    CHECK_THROWS_AS(eta_hat(d, 5, 1.0, 0.92), NoComparisonError);
    CHECK_THROWS_AS(eta_hat(DegreeDistribution::degenerate(1), 1, 0.3, 0.5), NoComparisonError);
    double previous = 0.0;
    for (double gap : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        const double e = eta_hat(d, 5, 1.0 - gap, 0.92);
        CHECK(e > previous);
        previous = e;
    }
    CHECK(previous > 1e4);
}

TEST_CASE("search benefit by degree against the payoff oracle")
{
    const auto& d = fig8_network();
    const auto ref = oracle::power_law(-2.5, 5);
    for (std::size_t khat = 1; khat <= 5; ++khat)
        for (double q : {0.2, 0.7})
            for (std::size_t type = 1; type <= 5; ++type) {
                const double r = asym_residual(d, kFig8, khat, q, type);
                const double o = static_cast<double>(oracle::asym_indifference_cost(ref, khat, q, 0.92, type));
                CHECK(r + 0.025 == doctest::Approx(o).epsilon(1e-10));
            }
}

TEST_CASE("residual limits")
{
    const auto& d = fig8_network();
    CHECK(asym_residual(d, kFig8, 5, 1.0 - 1e-9) == doctest::Approx(-0.025).epsilon(1e-4));
    CHECK_THROWS_AS(asym_residual(d, kFig8, 5, 1.0), NoComparisonError);
    for (std::size_t khat = 1; khat <= 5; ++khat)
        for (double q : {0.1, 0.5, 0.9}) CHECK(asym_residual(d, {1.0, 1.5, 0.92}, khat, q) < 0.0);
}

TEST_CASE("equilibria with degree-dependent search")
{
    const auto& d = fig8_network();
    const auto eqs = solve_asym(d, kFig8);
    REQUIRE_FALSE(eqs.empty());
    CHECK(std::is_sorted(eqs.begin(), eqs.end(), [](const auto& a, const auto& b) { return a.w < b.w; }));
    bool any_stable = false;
    for (const auto& eq : eqs) {
        CAPTURE(eq.khat);
        CAPTURE(eq.q);
        any_stable = any_stable || eq.stable;
        CHECK(eq.law.p_hi <= 1.0);
        CHECK(eq.eta_hat > 0.0);
        CHECK(eq.comparison_weight == doctest::Approx(comparison_weight(eq.w, eq.khat)));
        if (eq.regime == Regime::interior) {
            CHECK(std::abs(asym_residual(d, kFig8, eq.khat, eq.q)) <= 1e-9);
        } else {
            CHECK(eq.q == 1.0);
            CHECK(eq.residual >= 0.0);
            CHECK(eq.residual_next <= 0.0);
        }

        // Equal profit over the support.
        double lo = INFINITY, hi = -INFINITY;
        for (int i = 0; i <= 100; ++i) {
            const double p = eq.law.p_lo + (eq.law.p_hi - eq.law.p_lo) * i / 100.0;
            const double pi = firm_profit_asym(d, kFig8, eq, p);
            lo = std::min(lo, pi);
            hi = std::max(hi, pi);
        }
        CHECK(hi - lo <= 1e-9 * hi);
        CHECK(eq.profit == doctest::Approx(hi).epsilon(1e-9));
    }
    CHECK(any_stable);

    // The stable crossing sits at cutoff 3 with the cutoff type mixing.
    const auto stable = std::find_if(eqs.begin(), eqs.end(), [](const auto& e) { return e.stable; });
    CHECK(stable->khat == 3);
    CHECK(stable->regime == Regime::interior);
    CHECK(stable->q > 0.0);
    CHECK(stable->q < 1.0);
}

TEST_CASE("benefit curve jumps where the cutoff moves up")
{
    // The cutoff type at q = 1 and the next type at q = 0 describe the same
    // search profile but different consumers, so the curve has a vertical step.
    const auto& d = fig8_network();
    for (std::size_t khat = 1; khat < 5; ++khat) {
        const double end = asym_residual(d, kFig8, khat, 1.0 - 1e-12);
        const double start = asym_residual(d, kFig8, khat + 1, 1e-12);
        CHECK(end > start);
        CHECK(cutoff_profile(d, khat, 1.0).w == doctest::Approx(cutoff_profile(d, khat + 1, 0.0).w).epsilon(1e-15));
    }
}

TEST_CASE("boundary equilibrium")
{
    const auto& d = fig8_network();
    const MarketParams params{1.0, 0.04, 0.92};
    const auto eqs = solve_asym(d, params);
    const auto boundary =
        std::find_if(eqs.begin(), eqs.end(), [](const auto& e) { return e.regime == Regime::boundary; });
    REQUIRE(boundary != eqs.end());
    CHECK(boundary->q == 1.0);
    CHECK(boundary->khat == 1);
    CHECK(asym_residual(d, params, boundary->khat, 1.0) >= 0.0);
    CHECK(asym_residual(d, params, boundary->khat, 1.0, boundary->khat + 1) <= 0.0);
    CHECK(std::string(to_string(boundary->regime)) == "boundary");
}

TEST_CASE("small search costs push the cutoff to the top degree")
{
    const auto& d = fig8_network();
    double previous = 0.0;
    for (double s : {1e-3, 1e-4, 1e-5}) {
        const auto eqs = solve_asym(d, {1.0, s, 0.92});
        const auto stable = std::find_if(eqs.rbegin(), eqs.rend(), [](const auto& e) { return e.stable; });
        REQUIRE(stable != eqs.rend());
        CHECK(stable->khat == 5);
        CHECK(stable->q > previous);
        previous = stable->q;
    }
    CHECK(previous > 0.999);
}

TEST_CASE("one degree type reproduces the symmetric solver")
{
    const auto d = DegreeDistribution::degenerate(3);
    const MarketParams params{1.0, 0.05, 0.5};
    const auto sym = solve_equilibria(d, params);
    const auto asym = solve_asym(d, params);
    REQUIRE(sym.size() == asym.size());
    for (std::size_t i = 0; i < sym.size(); ++i) {
        CHECK(asym[i].khat == 3);
        CHECK(asym[i].q == doctest::Approx(sym[i].q).epsilon(1e-10));
        CHECK(asym[i].stable == sym[i].stable);
        CHECK(asym[i].law.p_hi == doctest::Approx(sym[i].law.p_hi).epsilon(1e-10));
    }
}

TEST_CASE("profit at the top of the support and without diffusion")
{
    const auto& d = fig8_network();
    const auto eqs = solve_asym(d, kFig8);
    REQUIRE_FALSE(eqs.empty());
    const auto& eq = eqs.back();
    const auto shares = asym_shares(d, eq.khat, eq.q, kFig8.delta);
    CHECK(firm_profit_asym(d, kFig8, eq, eq.law.p_hi) == doctest::Approx(shares.single * eq.law.p_hi).epsilon(1e-12));

    const MarketParams impatient{1.0, 0.025, 0.0};
    const double p = 0.5 * (eq.law.p_lo + eq.law.p_hi);
    CHECK(firm_profit_asym(d, impatient, eq, p) == doctest::Approx(0.5 * eq.w_hat * p).epsilon(1e-14));

    CHECK_THROWS_AS(firm_profit_asym(d, kFig8, eq, eq.law.p_hi * 1.1), InvalidArgument);
}

TEST_CASE("waiting is worth more to better-connected consumers")
{
    const auto& d = fig8_network();
    for (const auto& eq : solve_asym(d, kFig8)) {
        const auto payoff = waiting_payoffs(d, kFig8, eq);
        REQUIRE(payoff.size() == 5);
        CHECK(payoff.front() < payoff.back());
        CHECK(cutoff_monotonicity_check(d, kFig8, eq));
    }
    AsymEquilibrium flat;
    flat.w = 0.0;
    CHECK_THROWS_AS(cutoff_monotonicity_check(d, kFig8, flat), InvalidArgument);

    // Holds along a range of search probabilities, not only at equilibria.
    const auto big = DegreeDistribution::power_law(-1.0, 40);
    for (std::size_t khat : {3u, 10u, 25u})
        for (double q : {0.2, 0.8}) {
            AsymEquilibrium eq;
            eq.khat = khat;
            eq.q = q;
            eq.w = cutoff_profile(big, khat, q).w;
            eq.law = price_law(eta_hat(big, khat, q, 0.9), 0.02);
            CHECK(cutoff_monotonicity_check(big, {1.0, 0.02, 0.9}, eq));
        }
}

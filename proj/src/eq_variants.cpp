#include "womlab/eq_variants.hpp"

#include "womlab/errors.hpp"
#include "womlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace womlab {

double full_diffusion_lhs(double eta, double delta)
{
    const double a = one_minus_eta_log(eta);
    return (1.0 - delta) * a / (1.0 - 2.0 * delta * eta * a);
}

Equilibrium solve_full_diffusion(const MarketParams& params)
{
    params.validate();
    const double target = params.s / params.v;

    // Bisection in log(eta); the bracket spans every eta of practical interest.
    constexpr double log_lo = -30.0;
    constexpr double log_hi = 30.0;
    auto f = [&](double log_eta) { return full_diffusion_lhs(std::exp(log_eta), params.delta) - target; };
    if (!(f(log_lo) > 0.0))
        throw NoEquilibriumError("search cost too large for a full-diffusion equilibrium");
    if (!(f(log_hi) < 0.0))
        throw NoEquilibriumError("search cost too small to resolve eta below 1e13");
    const double eta = std::exp(roots::bisect(f, log_lo, log_hi, 1e-15));

    Equilibrium eq;
    eq.q = 2.0 * params.delta * eta / (1.0 + 2.0 * params.delta * eta);
    eq.law = price_law(eta, params.s);
    if (eq.law.p_hi > params.v)
        throw NoEquilibriumError("full-diffusion reservation price exceeds the valuation");
    eq.stable = true;
    eq.profit = 0.5 * eq.q * eq.law.p_hi;
    eq.residual = (params.v - eq.law.e_p - params.s) - params.delta * (params.v - eq.law.e_pmin);
    return eq;
}

namespace {

// int_{p_lo}^{x} F(p) dp for the law F(p) = 1 + eta - eta p_hi / p, with F = 1
// above the support.
double integrated_cdf(const PriceLaw& law, double x)
{
    if (x <= law.p_lo) return 0.0;
    const double upper = std::min(x, law.p_hi);
    double value = (1.0 + law.eta) * (upper - law.p_lo) - law.eta * law.p_hi * std::log(upper / law.p_lo);
    if (x > law.p_hi) value += x - law.p_hi;
    return value;
}

} // namespace

RhoCheck rho_solve(const DegreeDistribution& dist, const MarketParams& params, double q, const PriceLaw& law)
{
    if (!(params.v > 0.0)) throw InvalidArgument("valuation v must be positive");
    if (!(params.delta >= 0.0 && params.delta < 1.0)) throw InvalidArgument("delta must lie in [0,1)");
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("rho_solve: q must lie in (0,1)");
    if (!(law.p_lo > 0.0 && law.p_lo <= law.p_hi)) throw InvalidArgument("rho_solve: invalid price law");
    if (law.p_lo >= params.v) throw InvalidArgument("rho_solve: price support lies above v");

    const double weight = params.delta * (1.0 - pgf(dist, 1.0 - 0.5 * q));
    auto gain_from_waiting = [&](double rho) { return weight * integrated_cdf(law, rho); };
    auto excess = [&](double rho) { return (1.0 - params.delta) * (params.v - rho) - gain_from_waiting(rho); };

    RhoCheck check;
    check.r = law.p_hi;

    check.rhs_monotone = true;
    double prev = gain_from_waiting(law.p_lo);
    for (int i = 1; i <= 100; ++i) {
        const double rho = law.p_lo + (params.v - law.p_lo) * i / 100.0;
        const double cur = gain_from_waiting(rho);
        if (cur < prev) check.rhs_monotone = false;
        prev = cur;
    }

    const double f_lo = excess(law.p_lo);
    const double f_hi = excess(params.v);
    if (f_hi >= 0.0) {
        check.rho = std::numeric_limits<double>::infinity();
    } else if (f_lo <= 0.0) {
        check.rho = law.p_lo;
    } else {
        check.rho = roots::bisect(excess, law.p_lo, params.v, f_lo, 1e-14 * params.v);
    }
    check.holds = check.r <= check.rho;
    return check;
}

InformationCheck information_check(const DegreeDistribution& dist, double q)
{
    if (!(q > 0.0 && q <= 1.0)) throw InvalidArgument("information_check: q must lie in (0,1]");

    InformationCheck check;
    check.t1 = dist.t(1);
    check.vacuous = dist.single_link();

    // x = sum_k t(k) [1 - (1-q)^(k-1)], with 0^0 = 1 for k = 1.
    double stay_uninformed = 0.0;
    double power = 1.0;
    for (std::size_t k = 1; k <= dist.kmax(); ++k) {
        stay_uninformed += dist.t(k) * power;
        power *= 1.0 - q;
    }
    check.x = std::clamp(1.0 - stay_uninformed, 0.0, 1.0);
    check.p2 = 1.0 - pgf(dist, 1.0 - q);
    check.p3_bound = pgf(dist, 1.0 - check.x);
    check.limit_bound = pgf(dist, check.t1);
    check.holds = !check.vacuous && check.p3_bound < check.p2 && check.p3_bound < 1.0;
    return check;
}

} // namespace womlab

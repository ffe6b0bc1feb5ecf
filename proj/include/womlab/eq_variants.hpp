#pragma once

#include "womlab/eq_baseline.hpp"
#include "womlab/network.hpp"
#include "womlab/pricing.hpp"

namespace womlab {

/// Left-hand side of the full-diffusion indifference condition as a function
/// of eta: (1 - delta) A / (1 - 2 delta eta A) with A = 1 - eta ln(1 + 1/eta).
/// Decreasing from 1 - delta (eta -> 0) to 0 (eta -> infinity).
double full_diffusion_lhs(double eta, double delta);

/// Equilibrium when every searched price reaches every passive consumer,
/// who then buys at the lower price. q = 2 delta eta / (1 + 2 delta eta).
/// The residual field holds (v - E[p] - s) - delta (v - E[min]).
/// Throws NoEquilibriumError when s is too large.
Equilibrium solve_full_diffusion(const MarketParams& params);

/// Price at which a consumer holding a quote is indifferent between buying
/// now and waiting a period for a friend's report.
struct RhoCheck {
    double rho = 0.0;          ///< +infinity when waiting is never attractive
    double r = 0.0;            ///< reservation price of the law
    bool holds = false;        ///< r <= rho
    bool rhs_monotone = false; ///< waiting gain nondecreasing on a 101-point grid
};

/// Solves (1 - delta)(v - rho) = delta (1 - tau(1 - q/2)) * int_{p_lo}^{rho} F
/// by bisection on [p_lo, v]. delta = 0 is accepted and gives rho = +infinity.
RhoCheck rho_solve(const DegreeDistribution& dist, const MarketParams& params, double q, const PriceLaw& law);

/// Probabilities behind the argument that uninformed passive consumers
/// search in the second period rather than wait again.
struct InformationCheck {
    double x = 0.0;           ///< a friend is informed by their other friends
    double p2 = 0.0;          ///< informed by a friend at the start of period 2
    double p3_bound = 0.0;    ///< upper bound on being informed in period 3, tau(1 - x)
    double limit_bound = 0.0; ///< tau(t(1)), the q -> 1 value of p3_bound
    double t1 = 0.0;
    bool vacuous = false;     ///< t(1) = 1: nobody has a second friend
    bool holds = false;       ///< p3_bound < p2 and p3_bound < 1
};

/// Accepts 0 < q <= 1.
InformationCheck information_check(const DegreeDistribution& dist, double q);

} // namespace womlab

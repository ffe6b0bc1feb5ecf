#pragma once

#include "womlab/network.hpp"
#include "womlab/pricing.hpp"

#include <span>
#include <vector>

namespace womlab {

/// The no-trade equilibrium (nobody searches, firms price above v - s)
/// exists for every s > 0 and is not returned by the interior solvers.
inline constexpr double kNoTradeSearchProbability = 0.0;

/// An interior equilibrium of the symmetric model.
struct Equilibrium {
    double q = 0.0;        ///< probability that a consumer searches in period 1
    PriceLaw law;
    bool stable = false;   ///< benefit curve crosses the cost line from above
    double profit = 0.0;   ///< per-firm expected profit
    double residual = 0.0; ///< indifference residual at q
};

/// Normalized benefit of searching: the value of s/v at which a consumer is
/// indifferent between searching and waiting when everybody else searches
/// with probability q. Requires 0 < q < 1 and a network with t(1) < 1.
double rhs_ic(const DegreeDistribution& dist, double delta, double q);

/// All interior roots of rhs_ic(q) = s/v on (1e-9, 1 - 1e-9), ordered by q.
/// Candidates whose reservation price exceeds v are discarded. Returns an
/// empty list when s >= v or s is above the existence threshold.
std::vector<Equilibrium> solve_equilibria(const DegreeDistribution& dist, const MarketParams& params);

/// The stable equilibrium with the largest search probability.
/// Throws NoEquilibriumError when none exists.
Equilibrium stable_equilibrium(const DegreeDistribution& dist, const MarketParams& params);

/// Largest search cost for which an active-trade equilibrium exists:
/// v * max_q rhs_ic(q).
double s_bar(const DegreeDistribution& dist, double delta, double v = 1.0);

struct LimitEntry {
    double s = 0.0;
    bool found = false;     ///< false when s is above the existence threshold
    double q = 0.0;
    double e_p = 0.0;
    double dispersion = 0.0;
};

struct SmallSearchCostReport {
    std::vector<LimitEntry> entries;
    bool q_increasing = true;
    bool price_increasing = true;
    bool dispersion_decreasing = true;

    bool monotone() const noexcept { return q_increasing && price_increasing && dispersion_decreasing; }
};

/// Follows the stable equilibrium along a nonincreasing sequence of search
/// costs and checks that q and E[p] rise while p_hi - p_lo falls. Equal
/// consecutive costs must give equal outcomes; unsolvable costs are flagged
/// and left out of the comparison.
SmallSearchCostReport small_s_limit_check(const DegreeDistribution& dist, double delta, double v,
                                          std::span<const double> s_sequence);

struct DenseEntry {
    std::size_t kmax = 0;
    double q = 0.0;
    double eta = 0.0;
    double relative_dispersion = 0.0; ///< (p_hi - p_lo) / p_hi = 1 / (1 + eta)
    double e_p = 0.0;
};

struct DenseLimitReport {
    std::vector<DenseEntry> entries;
    double min_relative_dispersion = 0.0;
    double min_price = 0.0;
    bool dispersion_persists = false;
    bool price_bounded = false;
};

/// Stable equilibria on networks where everybody has exactly kmax friends.
/// Passes when the relative dispersion never drops below dispersion_floor
/// and E[p] never drops below price_multiple * s.
DenseLimitReport dense_limit_check(const MarketParams& params, std::span<const std::size_t> kmax_sequence,
                                   double dispersion_floor = 0.01, double price_multiple = 10.0);

} // namespace womlab

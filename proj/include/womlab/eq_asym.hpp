#pragma once

#include "womlab/network.hpp"
#include "womlab/pricing.hpp"

#include <cstddef>
#include <vector>

namespace womlab {

/// Search behaviour when consumers know their own degree: types below the
/// cutoff khat always search, type khat searches with probability q, types
/// above wait for their friends.
struct CutoffProfile {
    double w_hat = 0.0; ///< population share of searchers
    double w = 0.0;     ///< probability that a random neighbour searches (degree-weighted)
};

CutoffProfile cutoff_profile(const DegreeDistribution& dist, std::size_t khat, double q);

/// 1 + (1-w)^k - 2 (1-w/2)^k: probability that the searching friends of a
/// degree-k consumer visited both firms.
double comparison_weight(double w, std::size_t k);

/// Demand shares that shape the asymmetric price law: `single` counts
/// consumers who see one price (per firm), `both` those who compare.
struct AsymShares {
    double single = 0.0;
    double both = 0.0;
};

AsymShares asym_shares(const DegreeDistribution& dist, std::size_t khat, double q, double delta);

/// Ratio of non-comparers to comparers. Throws NoComparisonError when no
/// consumer compares prices (e.g. khat = kmax with q = 1).
double eta_hat(const DegreeDistribution& dist, std::size_t khat, double q, double delta);

/// Normalized benefit of searching minus s/v for a consumer of degree
/// `type_degree` (default: the cutoff type) under cutoff profile (khat, q).
/// Positive means that type strictly prefers to search.
double asym_residual(const DegreeDistribution& dist, const MarketParams& params, std::size_t khat, double q,
                     std::size_t type_degree = 0);

enum class Regime {
    interior, ///< the cutoff type mixes, 0 < q < 1
    boundary  ///< the cutoff type searches for sure and the next type waits
};

const char* to_string(Regime regime) noexcept;

struct AsymEquilibrium {
    std::size_t khat = 0;
    double q = 0.0;
    double w = 0.0;
    double w_hat = 0.0;
    double eta_hat = 0.0;
    double comparison_weight = 0.0; ///< W for the cutoff type
    PriceLaw law;
    Regime regime = Regime::interior;
    bool stable = false;
    double profit = 0.0;
    double residual = 0.0;      ///< cutoff type's residual (0 when interior)
    double residual_next = 0.0; ///< next type's residual (boundary regime only)
};

/// Scans every cutoff with positive mass for interior crossings and for
/// boundary configurations, ordered by neighbour search probability w.
std::vector<AsymEquilibrium> solve_asym(const DegreeDistribution& dist, const MarketParams& params);

/// Per-firm profit from price p, summing explicitly over degrees and over
/// the number of searching friends.
double firm_profit_asym(const DegreeDistribution& dist, const MarketParams& params, const AsymEquilibrium& eq,
                        double p);

/// Payoff of waiting for a degree-k consumer at the equilibrium, k = 1..kmax.
std::vector<double> waiting_payoffs(const DegreeDistribution& dist, const MarketParams& params,
                                    const AsymEquilibrium& eq);

/// True when waiting_payoffs is strictly increasing in k (requires 0 < w < 1).
bool cutoff_monotonicity_check(const DegreeDistribution& dist, const MarketParams& params,
                               const AsymEquilibrium& eq);

} // namespace womlab

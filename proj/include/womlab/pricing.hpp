#pragma once

#include "womlab/network.hpp"

namespace womlab {

/// Valuation v, search cost s and diffusion speed (second-period discount) delta.
struct MarketParams {
    double v = 1.0;
    double s = 0.05;
    double delta = 0.9;

    /// Throws InvalidArgument unless v > 0, 0 < s < v and 0 < delta < 1.
    void validate() const;
};

/// Equilibrium price distribution F(p) = 1 + eta - eta * p_hi / p on
/// [p_lo, p_hi], with its first two order-statistic moments.
struct PriceLaw {
    double eta = 0.0;    ///< non-comparers per comparer
    double p_hi = 0.0;   ///< upper support bound, the reservation price r
    double p_lo = 0.0;   ///< lower support bound, eta / (1 + eta) * p_hi
    double e_p = 0.0;    ///< E[p]
    double e_pmin = 0.0; ///< E[min(p1, p2)]

    double dispersion() const noexcept { return p_hi - p_lo; }
};

/// 1 - eta * ln(1 + 1/eta), evaluated without cancellation for large eta.
double one_minus_eta_log(double eta);

/// (1 + 2 eta) ln(1 + 1/eta) - 2, evaluated without cancellation for large eta.
double dispersion_factor(double eta);

/// Ratio of single-price to two-price consumers in the symmetric model.
/// Throws NoComparisonError when nobody can compare prices.
double eta_baseline(const DegreeDistribution& dist, double q, double delta);

/// Builds the price law for a given eta and search cost. The upper bound is
/// the reservation price s / (1 - eta ln(1 + 1/eta)); it is not capped at v.
PriceLaw price_law(double eta, double s);

double cdf(const PriceLaw& law, double p) noexcept;

/// Inverse of cdf on [0, 1].
double quantile(const PriceLaw& law, double u);

/// Per-firm expected profit from charging p when the rival plays law and
/// consumers search with probability q. p must lie in the support.
double firm_profit_baseline(const DegreeDistribution& dist, double q, double delta,
                            const PriceLaw& law, double p);

/// E[p] = s * eta ln(1+1/eta) / (1 - eta ln(1+1/eta)).
double expected_price(double eta, double s);

} // namespace womlab

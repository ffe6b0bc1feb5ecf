#include "womlab/pricing.hpp"

#include "womlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace womlab {

namespace {

// Below this z = 1/eta the power series are used; at z = 0.1 twenty terms
// reach double precision.
constexpr double kSeriesCutoff = 0.1;
constexpr int kSeriesTerms = 24;

bool in_support(const PriceLaw& law, double p)
{
    const double slack = 1e-12 * law.p_hi;
    return p >= law.p_lo - slack && p <= law.p_hi + slack;
}

} // namespace

void MarketParams::validate() const
{
    if (!(std::isfinite(v) && v > 0.0)) throw InvalidArgument("valuation v must be positive");
    if (!(s > 0.0 && s < v)) throw InvalidArgument("search cost must satisfy 0 < s < v");
    if (!(delta > 0.0 && delta < 1.0))
        throw InvalidArgument("delta must satisfy 0 < delta < 1 (no active trade at 0 or 1)");
}

double one_minus_eta_log(double eta)
{
    if (!(eta > 0.0)) throw InvalidArgument("eta must be positive");
    const double z = 1.0 / eta;
    if (z > kSeriesCutoff) return 1.0 - std::log1p(z) / z;
    // sum_{j>=2} (-1)^j z^(j-1) / j
    double acc = 0.0;
    double zp = 1.0;
    for (int j = 2; j < 2 + kSeriesTerms; ++j) {
        zp *= z;
        acc += ((j % 2 == 0) ? 1.0 : -1.0) * zp / j;
    }
    return acc;
}

double dispersion_factor(double eta)
{
    if (!(eta > 0.0)) throw InvalidArgument("eta must be positive");
    const double z = 1.0 / eta;
    if (z > kSeriesCutoff) return (1.0 + 2.0 * eta) * std::log1p(z) - 2.0;
    // sum_{n>=3} (-1)^(n+1) (n-2) / (n (n-1)) z^(n-1)
    double acc = 0.0;
    double zp = z;
    for (int n = 3; n < 3 + kSeriesTerms; ++n) {
        zp *= z;
        acc += ((n % 2 == 1) ? 1.0 : -1.0) * (n - 2.0) / (n * (n - 1.0)) * zp;
    }
    return acc;
}

double eta_baseline(const DegreeDistribution& dist, double q, double delta)
{
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("eta_baseline: q must lie in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("eta_baseline: delta must lie in (0,1)");
    if (dist.single_link())
        throw NoComparisonError("every consumer has one friend; nobody compares prices");

    const double tt = tau_tilde(dist, q);
    const double denom = delta * (1.0 - q) * tt;
    if (!(denom > 0.0)) throw NoComparisonError("no consumer observes two prices at this q");
    const double single = pgf(dist, 1.0 - 0.5 * q) - 0.5 * pgf(dist, 1.0 - q);
    const double eta = (0.5 * q + delta * (1.0 - q) * single) / denom;
    if (!std::isfinite(eta)) throw DivergedError("eta overflow");
    return eta;
}

PriceLaw price_law(double eta, double s)
{
    if (!(eta > 0.0) || !std::isfinite(eta)) throw DivergedError("price_law: eta must be positive and finite");
    if (!(s > 0.0)) throw InvalidArgument("price_law: s must be positive");

    const double a = one_minus_eta_log(eta);
    if (!(a > 0.0)) throw DivergedError("price_law: 1 - eta ln(1+1/eta) lost all precision");
    PriceLaw law;
    law.eta = eta;
    law.p_hi = s / a;
    if (!std::isfinite(law.p_hi)) throw DivergedError("price_law: reservation price overflow");
    law.p_lo = eta / (1.0 + eta) * law.p_hi;
    law.e_p = law.p_hi - s;
    law.e_pmin = law.e_p - eta * law.p_hi * dispersion_factor(eta);
    return law;
}

double cdf(const PriceLaw& law, double p) noexcept
{
    if (p < law.p_lo) return 0.0;
    if (p >= law.p_hi) return 1.0;
    // 1 + eta - eta p_hi / p rewritten around p_lo, which keeps F(p_lo) = 0
    // exact even when eta is huge and the support is narrow.
    const double f = (1.0 + law.eta) * (p - law.p_lo) / p;
    return f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f);
}

double quantile(const PriceLaw& law, double u)
{
    if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("quantile: u must lie in [0,1]");
    if (u == 1.0) return law.p_hi;
    return law.eta * law.p_hi / (1.0 + law.eta - u);
}

double firm_profit_baseline(const DegreeDistribution& dist, double q, double delta,
                            const PriceLaw& law, double p)
{
    if (!in_support(law, p))
        throw InvalidArgument("firm_profit_baseline: price " + std::to_string(p) + " outside the support");
    const double single = pgf(dist, 1.0 - 0.5 * q) - 0.5 * pgf(dist, 1.0 - q);
    const double both = tau_tilde(dist, q);
    // 1 - F(p) = eta (p_hi - p) / p, without subtracting from 1.
    const double survival = std::clamp(law.eta * (law.p_hi - p) / p, 0.0, 1.0);
    const double share = 0.5 * q + delta * (1.0 - q) * (single + both * survival);
    return share * p;
}

double expected_price(double eta, double s)
{
    if (!(s > 0.0)) throw InvalidArgument("expected_price: s must be positive");
    const double a = one_minus_eta_log(eta);
    return s * (1.0 - a) / a;
}

} // namespace womlab

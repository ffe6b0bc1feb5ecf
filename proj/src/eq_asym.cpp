#include "womlab/eq_asym.hpp"

#include "womlab/errors.hpp"
#include "womlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace womlab {

namespace {

constexpr double kWindow = 1e-9;
constexpr double kScanStep = 1e-3;
constexpr double kRootTol = 1e-13;
constexpr double kSlopeStep = 1e-7;

void check_cutoff(const DegreeDistribution& dist, std::size_t khat, double q)
{
    if (khat < 1 || khat > dist.kmax()) throw InvalidArgument("cutoff degree must lie in 1..kmax");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("cutoff search probability must lie in [0,1]");
}

// P(Binomial(k, w) = m), computed in log space so large k stays finite.
double binomial_pmf(std::size_t k, std::size_t m, double w)
{
    if (w <= 0.0) return m == 0 ? 1.0 : 0.0;
    if (w >= 1.0) return m == k ? 1.0 : 0.0;
    const double kk = static_cast<double>(k);
    const double mm = static_cast<double>(m);
    const double log_choose = std::lgamma(kk + 1.0) - std::lgamma(mm + 1.0) - std::lgamma(kk - mm + 1.0);
    return std::exp(log_choose + mm * std::log(w) + (kk - mm) * std::log1p(-w));
}

// Benefit of searching for a degree-`type` consumer, normalized by v. Zero
// when nobody compares prices (the price law collapses onto the reservation
// price and waiting costs nothing extra).
double search_benefit(const DegreeDistribution& dist, double delta, std::size_t khat, double q, std::size_t type)
{
    const auto shares = asym_shares(dist, khat, q, delta);
    if (!(shares.both > 0.0)) return 0.0;
    const double eta = shares.single / shares.both;
    if (!std::isfinite(eta)) return 0.0;
    const auto profile = cutoff_profile(dist, khat, q);
    const double a = one_minus_eta_log(eta);
    const double bracket = delta * comparison_weight(profile.w, type) * dispersion_factor(eta) +
                           (1.0 - delta) * std::log1p(1.0 / eta);
    const double denom =
        1.0 - delta * std::pow(1.0 - profile.w, static_cast<double>(type)) + eta / a * bracket;
    return (1.0 - delta) / denom;
}

std::optional<std::size_t> next_type(const DegreeDistribution& dist, std::size_t khat)
{
    for (std::size_t k = khat + 1; k <= dist.kmax(); ++k)
        if (dist.t(k) > 0.0) return k;
    return std::nullopt;
}

AsymEquilibrium build(const DegreeDistribution& dist, const MarketParams& params, std::size_t khat, double q)
{
    AsymEquilibrium eq;
    eq.khat = khat;
    eq.q = q;
    const auto profile = cutoff_profile(dist, khat, q);
    eq.w = profile.w;
    eq.w_hat = profile.w_hat;
    const auto shares = asym_shares(dist, khat, q, params.delta);
    eq.eta_hat = eta_hat(dist, khat, q, params.delta);
    eq.comparison_weight = comparison_weight(profile.w, khat);
    eq.law = price_law(eq.eta_hat, params.s);
    eq.profit = shares.single * eq.law.p_hi;
    return eq;
}

} // namespace

CutoffProfile cutoff_profile(const DegreeDistribution& dist, std::size_t khat, double q)
{
    check_cutoff(dist, khat, q);
    double searchers = 0.0;
    double searcher_links = 0.0;
    for (std::size_t k = 1; k < khat; ++k) {
        searchers += dist.t(k);
        searcher_links += dist.t(k) * static_cast<double>(k);
    }
    searchers += dist.t(khat) * q;
    searcher_links += dist.t(khat) * static_cast<double>(khat) * q;
    return {searchers, std::clamp(searcher_links / mean_degree(dist), 0.0, 1.0)};
}

double comparison_weight(double w, std::size_t k)
{
    if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("comparison_weight: w must lie in [0,1]");
    return std::max(0.0, both_firms_probability(k, w));
}

AsymShares asym_shares(const DegreeDistribution& dist, std::size_t khat, double q, double delta)
{
    const auto profile = cutoff_profile(dist, khat, q);
    const double w = profile.w;
    auto single_price = [&](std::size_t k) {
        const double kk = static_cast<double>(k);
        return std::pow(1.0 - 0.5 * w, kk) - 0.5 * std::pow(1.0 - w, kk);
    };

    AsymShares shares;
    shares.single = 0.5 * profile.w_hat + delta * dist.t(khat) * (1.0 - q) * single_price(khat);
    shares.both = delta * dist.t(khat) * (1.0 - q) * comparison_weight(w, khat);
    for (std::size_t k = khat + 1; k <= dist.kmax(); ++k) {
        shares.single += delta * dist.t(k) * single_price(k);
        shares.both += delta * dist.t(k) * comparison_weight(w, k);
    }
    return shares;
}

double eta_hat(const DegreeDistribution& dist, std::size_t khat, double q, double delta)
{
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must satisfy 0 < delta < 1");
    const auto shares = asym_shares(dist, khat, q, delta);
    if (!(shares.both > 0.0)) throw NoComparisonError("no consumer compares prices under this cutoff");
    const double eta = shares.single / shares.both;
    if (!std::isfinite(eta)) throw DivergedError("eta_hat overflow");
    return eta;
}

double asym_residual(const DegreeDistribution& dist, const MarketParams& params, std::size_t khat, double q,
                     std::size_t type_degree)
{
    // s >= v is allowed here: the residual is then simply negative.
    if (!(params.v > 0.0)) throw InvalidArgument("valuation v must be positive");
    if (!(params.s > 0.0)) throw InvalidArgument("search cost must be positive");
    if (!(params.delta > 0.0 && params.delta < 1.0)) throw InvalidArgument("delta must satisfy 0 < delta < 1");
    const std::size_t type = type_degree == 0 ? khat : type_degree;
    if (type > dist.kmax()) throw InvalidArgument("type degree exceeds kmax");
    (void)eta_hat(dist, khat, q, params.delta);
    return search_benefit(dist, params.delta, khat, q, type) - params.s / params.v;
}

const char* to_string(Regime regime) noexcept
{
    return regime == Regime::interior ? "interior" : "boundary";
}

std::vector<AsymEquilibrium> solve_asym(const DegreeDistribution& dist, const MarketParams& params)
{
    params.validate();
    const double target = params.s / params.v;
    const auto grid = roots::unit_interval_grid(kScanStep, kWindow);

    std::vector<AsymEquilibrium> out;
    for (std::size_t khat = 1; khat <= dist.kmax(); ++khat) {
        if (!(dist.t(khat) > 0.0)) continue;
        auto excess = [&](double q) { return search_benefit(dist, params.delta, khat, q, khat) - target; };

        for (const auto& b : roots::scan_sign_changes(excess, grid)) {
            const double q = roots::bisect(excess, b.lo, b.hi, b.f_lo, kRootTol);
            AsymEquilibrium eq;
            try {
                eq = build(dist, params, khat, q);
            } catch (const NoComparisonError&) {
                continue;
            }
            if (eq.law.p_hi > params.v) continue;
            eq.regime = Regime::interior;
            eq.residual = excess(q);
            const double h = std::min({kSlopeStep, 0.5 * q, 0.5 * (1.0 - q)});
            eq.stable = excess(q + h) - excess(q - h) < 0.0;
            out.push_back(eq);
        }

        const auto next = next_type(dist, khat);
        if (!next) continue;
        const double own = search_benefit(dist, params.delta, khat, 1.0, khat) - target;
        const double other = search_benefit(dist, params.delta, khat, 1.0, *next) - target;
        if (own >= 0.0 && other <= 0.0) {
            AsymEquilibrium eq;
            try {
                eq = build(dist, params, khat, 1.0);
            } catch (const NoComparisonError&) {
                continue;
            }
            if (eq.law.p_hi > params.v) continue;
            eq.regime = Regime::boundary;
            eq.residual = own;
            eq.residual_next = other;
            eq.stable = own > 0.0 && other < 0.0;
            out.push_back(eq);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.w < b.w; });
    return out;
}

double firm_profit_asym(const DegreeDistribution& dist, const MarketParams& params, const AsymEquilibrium& eq,
                        double p)
{
    const double slack = 1e-12 * eq.law.p_hi;
    if (!(p >= eq.law.p_lo - slack && p <= eq.law.p_hi + slack))
        throw InvalidArgument("firm_profit_asym: price outside the support");
    const double lose_if_higher = std::clamp(eq.law.eta * (eq.law.p_hi - p) / p, 0.0, 1.0);

    // Passive degree-k consumer: m of k friends searched; all m at this firm
    // with probability 2^-m, split across both firms with 1 - 2^(1-m).
    auto passive_demand = [&](std::size_t k) {
        double demand = 0.5 * binomial_pmf(k, 0, eq.w);
        double half_pow = 1.0;
        for (std::size_t m = 1; m <= k; ++m) {
            half_pow *= 0.5;
            demand += binomial_pmf(k, m, eq.w) * (half_pow + (1.0 - 2.0 * half_pow) * lose_if_higher);
        }
        return demand;
    };

    double share = 0.5 * eq.w_hat;
    share += params.delta * dist.t(eq.khat) * (1.0 - eq.q) * passive_demand(eq.khat);
    for (std::size_t k = eq.khat + 1; k <= dist.kmax(); ++k)
        if (dist.t(k) > 0.0) share += params.delta * dist.t(k) * passive_demand(k);
    return share * p;
}

std::vector<double> waiting_payoffs(const DegreeDistribution& dist, const MarketParams& params,
                                    const AsymEquilibrium& eq)
{
    std::vector<double> payoff(dist.kmax());
    const double spread = eq.law.e_p - eq.law.e_pmin;
    for (std::size_t k = 1; k <= dist.kmax(); ++k) {
        const double alone = std::pow(1.0 - eq.w, static_cast<double>(k));
        payoff[k - 1] = params.delta * (params.v - eq.law.e_p + comparison_weight(eq.w, k) * spread - alone * params.s);
    }
    return payoff;
}

bool cutoff_monotonicity_check(const DegreeDistribution& dist, const MarketParams& params, const AsymEquilibrium& eq)
{
    if (!(eq.w > 0.0 && eq.w < 1.0)) throw InvalidArgument("cutoff_monotonicity_check: needs 0 < w < 1");
    const auto payoff = waiting_payoffs(dist, params, eq);
    for (std::size_t i = 1; i < payoff.size(); ++i)
        if (!(payoff[i] > payoff[i - 1])) return false;
    return true;
}

} // namespace womlab

#include "womlab/eq_baseline.hpp"

#include "womlab/errors.hpp"
#include "womlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace womlab {

namespace {

constexpr double kWindow = 1e-9;
constexpr double kScanStep = 1e-4;
constexpr double kRootTol = 1e-13;
constexpr double kSlopeStep = 1e-7;

double slope_at(const DegreeDistribution& dist, double delta, double q)
{
    const double h = std::min({kSlopeStep, 0.5 * q, 0.5 * (1.0 - q)});
    return (rhs_ic(dist, delta, q + h) - rhs_ic(dist, delta, q - h)) / (2.0 * h);
}

} // namespace

double rhs_ic(const DegreeDistribution& dist, double delta, double q)
{
    const double eta = eta_baseline(dist, q, delta);
    const double a = one_minus_eta_log(eta);
    const double log_term = std::log1p(1.0 / eta);
    const double bracket = delta * tau_tilde(dist, q) * dispersion_factor(eta) + (1.0 - delta) * log_term;
    const double denom = 1.0 - delta * pgf(dist, 1.0 - q) + eta / a * bracket;
    return (1.0 - delta) / denom;
}

std::vector<Equilibrium> solve_equilibria(const DegreeDistribution& dist, const MarketParams& params)
{
    if (!(params.v > 0.0)) throw InvalidArgument("valuation v must be positive");
    if (!(params.s > 0.0)) throw InvalidArgument("search cost must be positive");
    if (!(params.delta > 0.0 && params.delta < 1.0))
        throw InvalidArgument("delta must satisfy 0 < delta < 1 (no active trade at 0 or 1)");
    if (dist.single_link())
        throw NoComparisonError("every consumer has one friend; nobody compares prices");
    if (params.s >= params.v) return {};

    const double target = params.s / params.v;
    auto excess = [&](double q) { return rhs_ic(dist, params.delta, q) - target; };

    std::vector<Equilibrium> out;
    for (const auto& b : roots::scan_sign_changes(excess, roots::unit_interval_grid(kScanStep, kWindow))) {
        const double q = roots::bisect(excess, b.lo, b.hi, b.f_lo, kRootTol);
        Equilibrium eq;
        eq.q = q;
        eq.law = price_law(eta_baseline(dist, q, params.delta), params.s);
        if (eq.law.p_hi > params.v) continue;
        eq.residual = excess(q);
        eq.stable = slope_at(dist, params.delta, q) < 0.0;
        eq.profit = firm_profit_baseline(dist, q, params.delta, eq.law, eq.law.p_hi);
        out.push_back(eq);
    }
    return out;
}

Equilibrium stable_equilibrium(const DegreeDistribution& dist, const MarketParams& params)
{
    const auto all = solve_equilibria(dist, params);
    for (auto it = all.rbegin(); it != all.rend(); ++it)
        if (it->stable) return *it;
    throw NoEquilibriumError("no stable equilibrium with active trade");
}

double s_bar(const DegreeDistribution& dist, double delta, double v)
{
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must satisfy 0 < delta < 1");
    if (!(v > 0.0)) throw InvalidArgument("valuation v must be positive");
    if (dist.single_link()) throw NoComparisonError("every consumer has one friend; nobody compares prices");

    constexpr double step = 1e-3;
    auto f = [&](double q) { return rhs_ic(dist, delta, q); };
    double best_q = step;
    double best = f(step);
    for (int i = 2; i < 1000; ++i) {
        const double q = i * step;
        const double value = f(q);
        if (value > best) {
            best = value;
            best_q = q;
        }
    }
    const double lo = std::max(kWindow, best_q - step);
    const double hi = std::min(1.0 - kWindow, best_q + step);
    const auto [q_star, value] = roots::golden_max(f, lo, hi, 1e-12);
    return v * std::max(best, value);
}

SmallSearchCostReport small_s_limit_check(const DegreeDistribution& dist, double delta, double v,
                                          std::span<const double> s_sequence)
{
    for (std::size_t i = 0; i < s_sequence.size(); ++i) {
        if (!(s_sequence[i] > 0.0)) throw InvalidArgument("search costs must be positive");
        if (i > 0 && s_sequence[i] > s_sequence[i - 1])
            throw InvalidArgument("search costs must be nonincreasing");
    }

    SmallSearchCostReport report;
    for (double s : s_sequence) {
        LimitEntry entry;
        entry.s = s;
        try {
            const auto eq = stable_equilibrium(dist, MarketParams{v, s, delta});
            entry.found = true;
            entry.q = eq.q;
            entry.e_p = eq.law.e_p;
            entry.dispersion = eq.law.dispersion();
        } catch (const NoEquilibriumError&) {
            entry.found = false;
        }
        report.entries.push_back(entry);
    }

    const LimitEntry* prev = nullptr;
    for (const auto& e : report.entries) {
        if (!e.found) continue;
        if (prev != nullptr) {
            if (e.s < prev->s) {
                report.q_increasing = report.q_increasing && e.q > prev->q;
                report.price_increasing = report.price_increasing && e.e_p > prev->e_p;
                report.dispersion_decreasing = report.dispersion_decreasing && e.dispersion < prev->dispersion;
            } else {
                report.q_increasing = report.q_increasing && e.q == prev->q;
                report.price_increasing = report.price_increasing && e.e_p == prev->e_p;
                report.dispersion_decreasing = report.dispersion_decreasing && e.dispersion == prev->dispersion;
            }
        }
        prev = &e;
    }
    return report;
}

DenseLimitReport dense_limit_check(const MarketParams& params, std::span<const std::size_t> kmax_sequence,
                                   double dispersion_floor, double price_multiple)
{
    DenseLimitReport report;
    report.min_relative_dispersion = std::numeric_limits<double>::infinity();
    report.min_price = std::numeric_limits<double>::infinity();
    for (std::size_t kmax : kmax_sequence) {
        const auto dist = DegreeDistribution::degenerate(kmax);
        const auto eq = stable_equilibrium(dist, params);
        DenseEntry entry{kmax, eq.q, eq.law.eta, 1.0 / (1.0 + eq.law.eta), eq.law.e_p};
        report.min_relative_dispersion = std::min(report.min_relative_dispersion, entry.relative_dispersion);
        report.min_price = std::min(report.min_price, entry.e_p);
        report.entries.push_back(entry);
    }
    report.dispersion_persists = !report.entries.empty() && report.min_relative_dispersion >= dispersion_floor;
    report.price_bounded = !report.entries.empty() && report.min_price >= price_multiple * params.s;
    return report;
}

} // namespace womlab

#include "womlab/simulate.hpp"

#include "womlab/csv.hpp"
#include "womlab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>
#include <thread>

namespace womlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t replication_seed(std::uint64_t seed, std::size_t index)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(index) + 1));
}

// Sums for one replication; turned into batch means afterwards.
struct Batch {
    double active_payoff = 0.0;
    std::size_t active = 0;
    double passive_payoff = 0.0;
    std::size_t passive = 0;
    double single_price_paid = 0.0;
    std::size_t single = 0;
    std::size_t comparers = 0;
    std::vector<double> focal_demand;
};

void validate(const SimConfig& cfg, std::span<const double> price_grid)
{
    if (cfg.n_consumers == 0) throw InvalidArgument("simulation needs at least one consumer");
    if (cfg.n_replications == 0) throw InvalidArgument("simulation needs at least one replication");
    if (!(cfg.q > 0.0 && cfg.q < 1.0)) throw InvalidArgument("simulation: q must lie in (0,1)");
    if (!(cfg.params.v > 0.0)) throw InvalidArgument("simulation: v must be positive");
    if (!(cfg.params.s >= 0.0)) throw InvalidArgument("simulation: s must be nonnegative");
    if (!(cfg.params.delta >= 0.0 && cfg.params.delta <= 1.0))
        throw InvalidArgument("simulation: delta must lie in [0,1]");
    if (!(cfg.law.p_lo > 0.0 && cfg.law.p_lo <= cfg.law.p_hi && cfg.law.eta > 0.0))
        throw InvalidArgument("simulation: invalid price law");
    const double slack = 1e-12 * cfg.law.p_hi;
    for (double p : price_grid)
        if (!(p >= cfg.law.p_lo - slack && p <= cfg.law.p_hi + slack))
            throw InvalidArgument("profit grid price outside the support");
}

Batch run_replication(const SimConfig& cfg, std::span<const double> price_grid, std::size_t index)
{
    std::mt19937_64 rng(replication_seed(cfg.seed, index));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    const auto mass = cfg.dist.mass();
    std::discrete_distribution<std::size_t> degree(mass.begin(), mass.end());

    const double price[2] = {quantile(cfg.law, unit(rng)), quantile(cfg.law, unit(rng))};
    const double rival = price[1];
    const double v = cfg.params.v;
    const double s = cfg.params.s;
    const double delta = cfg.params.delta;

    Batch b;
    b.focal_demand.assign(price_grid.size(), 0.0);
    auto add_focal = [&](double weight, bool needs_lower) {
        for (std::size_t g = 0; g < price_grid.size(); ++g)
            if (!needs_lower || price_grid[g] < rival) b.focal_demand[g] += weight;
    };

    for (std::size_t c = 0; c < cfg.n_consumers; ++c) {
        if (unit(rng) < cfg.q) {
            const int firm = coin(rng) ? 0 : 1;
            b.active_payoff += v - price[firm] - s;
            ++b.active;
            b.single_price_paid += price[firm];
            ++b.single;
            if (firm == 0) add_focal(1.0, false);
            continue;
        }

        ++b.passive;
        const int k = static_cast<int>(degree(rng)) + 1;
        const int m = std::binomial_distribution<int>(k, cfg.q)(rng);
        if (m == 0) {
            // Nobody reported: search in period 2.
            const int firm = coin(rng) ? 0 : 1;
            b.passive_payoff += delta * (v - price[firm] - s);
            b.single_price_paid += price[firm];
            ++b.single;
            if (firm == 0) add_focal(delta, false);
            continue;
        }
        const int at_focal = std::binomial_distribution<int>(m, 0.5)(rng);
        if (at_focal == 0 || at_focal == m) {
            const int firm = at_focal == m ? 0 : 1;
            b.passive_payoff += delta * (v - price[firm]);
            b.single_price_paid += price[firm];
            ++b.single;
            if (firm == 0) add_focal(delta, false);
        } else {
            b.passive_payoff += delta * (v - std::min(price[0], price[1]));
            ++b.comparers;
            add_focal(delta, true);
        }
    }
    return b;
}

Estimate summarize(const std::vector<double>& batch_means)
{
    Estimate e;
    if (batch_means.empty()) return e;
    const auto n = static_cast<double>(batch_means.size());
    double sum = 0.0;
    for (double x : batch_means) sum += x;
    e.mean = sum / n;
    if (batch_means.size() > 1) {
        double ss = 0.0;
        for (double x : batch_means) ss += (x - e.mean) * (x - e.mean);
        e.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return e;
}

} // namespace

unsigned default_thread_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WOMLAB_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = static_cast<unsigned>(cap);
    }
    return n;
}

SimReport simulate_market(const SimConfig& cfg, std::span<const double> price_grid)
{
    validate(cfg, price_grid);

    std::vector<Batch> batches(cfg.n_replications);
    const unsigned threads =
        static_cast<unsigned>(std::min<std::size_t>(cfg.threads ? cfg.threads : default_thread_count(),
                                                    cfg.n_replications));
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] {
                for (std::size_t r = t; r < cfg.n_replications; r += threads)
                    batches[r] = run_replication(cfg, price_grid, r);
            });
        }
    }

    // Merge in replication order so the report is independent of scheduling.
    std::vector<double> active, passive, gap, paid, compare;
    std::vector<std::vector<double>> demand(price_grid.size());
    const auto consumers = static_cast<double>(cfg.n_consumers);
    for (const auto& b : batches) {
        if (b.active) active.push_back(b.active_payoff / static_cast<double>(b.active));
        if (b.passive) passive.push_back(b.passive_payoff / static_cast<double>(b.passive));
        if (b.active && b.passive)
            gap.push_back(b.active_payoff / static_cast<double>(b.active) -
                          b.passive_payoff / static_cast<double>(b.passive));
        if (b.single) paid.push_back(b.single_price_paid / static_cast<double>(b.single));
        compare.push_back(static_cast<double>(b.comparers) / consumers);
        for (std::size_t g = 0; g < price_grid.size(); ++g) demand[g].push_back(b.focal_demand[g] / consumers);
    }

    SimReport report;
    report.payoff_active = summarize(active);
    report.payoff_passive = summarize(passive);
    report.payoff_gap = summarize(gap);
    report.e_price_paid = summarize(paid);
    report.comparer_fraction = summarize(compare);
    for (std::size_t g = 0; g < price_grid.size(); ++g) {
        ProfitPoint pt;
        pt.price = price_grid[g];
        pt.demand = summarize(demand[g]);
        pt.profit = {pt.demand.mean * pt.price, pt.demand.std_error * pt.price};
        report.profit_at.push_back(pt);
    }
    report.generator = kGeneratorName;
    report.seed = cfg.seed;
    report.n_consumers = cfg.n_consumers;
    report.n_replications = cfg.n_replications;
    return report;
}

std::vector<ProfitPoint> profit_curve(const SimConfig& cfg, std::span<const double> price_grid)
{
    return simulate_market(cfg, price_grid).profit_at;
}

void write_csv(std::ostream& out, const SimReport& report)
{
    auto row = [&](const std::string& name, const Estimate& e) {
        out << name << ',' << csv::format_real(e.mean) << ',' << csv::format_real(e.std_error) << '\n';
    };
    out << "metric,mean,stderr\n";
    row("payoff_active", report.payoff_active);
    row("payoff_passive", report.payoff_passive);
    row("payoff_gap", report.payoff_gap);
    row("e_price_paid", report.e_price_paid);
    row("comparer_fraction", report.comparer_fraction);
    for (const auto& pt : report.profit_at) row("profit@" + csv::format_real(pt.price), pt.profit);
}

std::string to_json(const SimReport& report)
{
    auto est = [](const Estimate& e) { return nlohmann::json{{"mean", e.mean}, {"stderr", e.std_error}}; };
    nlohmann::json j;
    j["payoff_active"] = est(report.payoff_active);
    j["payoff_passive"] = est(report.payoff_passive);
    j["payoff_gap"] = est(report.payoff_gap);
    j["e_price_paid"] = est(report.e_price_paid);
    j["comparer_fraction"] = est(report.comparer_fraction);
    auto points = nlohmann::json::array();
    for (const auto& pt : report.profit_at)
        points.push_back({{"price", pt.price}, {"demand", est(pt.demand)}, {"profit", est(pt.profit)}});
    j["profit_at"] = points;
    j["generator"] = report.generator;
    j["seed"] = report.seed;
    j["n_consumers"] = report.n_consumers;
    j["n_replications"] = report.n_replications;
    return j.dump(2);
}

} // namespace womlab

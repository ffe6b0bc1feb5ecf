#pragma once

#include "womlab/network.hpp"
#include "womlab/pricing.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace womlab {

/// Mean of per-replication batch means and its standard error.
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
};

struct ProfitPoint {
    double price = 0.0;
    Estimate demand; ///< discounted demand share of the focal firm
    Estimate profit;
};

struct SimConfig {
    std::size_t n_consumers = 1000;
    std::size_t n_replications = 1000;
    std::uint64_t seed = 42;
    MarketParams params;
    DegreeDistribution dist = DegreeDistribution::degenerate(2);
    double q = 0.5;
    PriceLaw law;
    /// Worker threads; 0 means WOMLAB_THREADS or the hardware concurrency.
    unsigned threads = 0;
};

struct SimReport {
    Estimate payoff_active;     ///< searchers: v - p - s
    Estimate payoff_passive;    ///< waiters: delta (v - paid [- s])
    /// Active minus passive payoff, paired within each replication so the
    /// price draws shared by both groups cancel out of the standard error.
    Estimate payoff_gap;
    Estimate e_price_paid;      ///< price paid by consumers who saw one price
    Estimate comparer_fraction; ///< share of all consumers who saw both prices
    std::vector<ProfitPoint> profit_at;

    std::string generator;
    std::uint64_t seed = 0;
    std::size_t n_consumers = 0;
    std::size_t n_replications = 0;
};

/// Name of the random stream construction recorded in every report.
inline constexpr const char* kGeneratorName = "mt19937_64 seeded per replication by splitmix64(seed, index)";

/// Two-period market with mean-field friendships: per replication both
/// firms draw a price from the law; per consumer, search with probability q,
/// otherwise draw a degree k and m ~ Binomial(k, q) searching friends, each
/// visiting a uniformly chosen firm. For every price on price_grid the focal
/// firm (firm 1) is held at that price against the rival's draw.
/// The result depends only on the configuration, not on the thread count.
SimReport simulate_market(const SimConfig& cfg, std::span<const double> price_grid = {});

/// Focal-firm demand and profit at each grid price. Grid prices must lie in
/// the support of cfg.law.
std::vector<ProfitPoint> profit_curve(const SimConfig& cfg, std::span<const double> price_grid);

/// Worker count from WOMLAB_THREADS, else the hardware concurrency (>= 1).
unsigned default_thread_count();

/// `metric,mean,stderr` rows; profit points appear as profit@<price>.
void write_csv(std::ostream& out, const SimReport& report);

std::string to_json(const SimReport& report);

} // namespace womlab

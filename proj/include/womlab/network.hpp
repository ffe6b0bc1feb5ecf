#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace womlab {

/// Parameters of a power-law degree distribution t(k) = n * k^gamma.
struct PowerLawMeta {
    double gamma;
    double normalizer;
};

/// Probability mass over the number of friends k = 1..kmax.
///
/// The mass is normalized once at construction and never mutated afterwards,
/// so a distribution can be shared freely between threads.
class DegreeDistribution {
public:
    /// Builds a distribution from (unnormalized) nonnegative weights for
    /// k = 1..weights.size(). Throws InvalidArgument on empty, negative,
    /// non-finite or all-zero input.
    static DegreeDistribution from_weights(std::span<const double> weights);

    /// t(k) proportional to k^gamma on 1..kmax.
    static DegreeDistribution power_law(double gamma, std::size_t kmax);

    /// Every consumer has exactly k friends.
    static DegreeDistribution degenerate(std::size_t k);

    std::size_t kmax() const noexcept { return mass_.size(); }

    /// t(k) for 1 <= k <= kmax, zero outside.
    double t(std::size_t k) const noexcept;

    std::span<const double> mass() const noexcept { return mass_; }

    const std::optional<PowerLawMeta>& meta() const noexcept { return meta_; }

    /// True when every consumer has exactly one friend, in which case no
    /// consumer can ever learn two prices through the network.
    bool single_link() const noexcept { return t(1) >= 1.0; }

private:
    DegreeDistribution(std::vector<double> mass, std::optional<PowerLawMeta> meta);

    std::vector<double> mass_;
    std::optional<PowerLawMeta> meta_;
};

/// Probability generating function tau(x) = sum_k t(k) x^k, x in [0,1].
double pgf(const DegreeDistribution& dist, double x);

/// 1 + (1-q)^k - 2 (1-q/2)^k: chance that a degree-k consumer's friends,
/// each searching with probability q at a uniformly chosen firm, visited
/// both firms. Accurate down to q = 0.
double both_firms_probability(std::size_t k, double q);

/// 1 + tau(1-q) - 2 tau(1-q/2): the ex-ante probability that a consumer's
/// searching friends visited both firms.
double tau_tilde(const DegreeDistribution& dist, double q);

/// Expected number of friends.
double mean_degree(const DegreeDistribution& dist);

/// Writes the `k,t_k` table (header row, 17 significant digits).
void write_csv(std::ostream& out, const DegreeDistribution& dist);

/// Parses a `k,t_k` table. Degrees must be 1..kmax in order; the masses are
/// renormalized if they sum to 1 within 1e-9, otherwise InvalidArgument.
DegreeDistribution read_csv(std::istream& in);

} // namespace womlab

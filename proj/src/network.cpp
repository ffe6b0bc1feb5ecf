#include "womlab/network.hpp"

#include "womlab/csv.hpp"
#include "womlab/errors.hpp"

#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

namespace womlab {

DegreeDistribution::DegreeDistribution(std::vector<double> mass, std::optional<PowerLawMeta> meta)
    : mass_(std::move(mass)), meta_(meta)
{
}

DegreeDistribution DegreeDistribution::from_weights(std::span<const double> weights)
{
    if (weights.empty()) throw InvalidArgument("degree distribution needs kmax >= 1");
    double total = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0)
            throw InvalidArgument("degree weights must be finite and nonnegative");
        total += w;
    }
    if (total <= 0.0) throw InvalidArgument("degree weights sum to zero");
    std::vector<double> mass(weights.begin(), weights.end());
    for (double& m : mass) m /= total;
    return DegreeDistribution(std::move(mass), std::nullopt);
}

DegreeDistribution DegreeDistribution::power_law(double gamma, std::size_t kmax)
{
    if (kmax == 0) throw InvalidArgument("power_law: kmax must be >= 1");
    if (!std::isfinite(gamma)) throw InvalidArgument("power_law: gamma must be finite");

    std::vector<double> mass(kmax);
    for (std::size_t k = 1; k <= kmax; ++k) mass[k - 1] = std::pow(static_cast<double>(k), gamma);
    // Summing smallest terms first keeps the normalizer accurate for gamma > 0.
    double total = 0.0;
    if (gamma > 0.0) {
        for (auto it = mass.begin(); it != mass.end(); ++it) total += *it;
    } else {
        for (auto it = mass.rbegin(); it != mass.rend(); ++it) total += *it;
    }
    if (!std::isfinite(total) || total <= 0.0)
        throw InvalidArgument("power_law: normalizer overflow");
    const double n = 1.0 / total;
    for (std::size_t k = 1; k <= kmax; ++k) mass[k - 1] = n * std::pow(static_cast<double>(k), gamma);
    return DegreeDistribution(std::move(mass), PowerLawMeta{gamma, n});
}

DegreeDistribution DegreeDistribution::degenerate(std::size_t k)
{
    if (k == 0) throw InvalidArgument("degenerate: k must be >= 1");
    std::vector<double> mass(k, 0.0);
    mass.back() = 1.0;
    return DegreeDistribution(std::move(mass), std::nullopt);
}

double DegreeDistribution::t(std::size_t k) const noexcept
{
    if (k == 0 || k > mass_.size()) return 0.0;
    return mass_[k - 1];
}

double pgf(const DegreeDistribution& dist, double x)
{
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("pgf: x must lie in [0,1]");
    // Horner: x * (t1 + x * (t2 + ... + x * t_kmax))
    const auto mass = dist.mass();
    double acc = 0.0;
    for (auto it = mass.rbegin(); it != mass.rend(); ++it) acc = acc * x + *it;
    return acc * x;
}

double both_firms_probability(std::size_t k, double q)
{
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("both_firms_probability: q must lie in [0,1]");
    const double kd = static_cast<double>(k);
    if (kd * q > 0.5) return std::expm1(kd * std::log1p(-q)) - 2.0 * std::expm1(kd * std::log1p(-0.5 * q));
    // Binomial expansion: sum_{j>=2} C(k,j) (-q)^j (1 - 2^(1-j)). The j = 0
    // and j = 1 terms cancel exactly, which the closed form cannot see.
    double acc = 0.0;
    double c = 1.0;
    double half_pow = 1.0;
    for (std::size_t j = 1; j <= k; ++j) {
        c *= -q * static_cast<double>(k - j + 1) / static_cast<double>(j);
        if (j == 1) continue;
        half_pow *= 0.5;
        const double term = c * (1.0 - half_pow);
        acc += term;
        if (std::abs(term) <= 1e-18 * std::abs(acc)) break;
    }
    return acc;
}

double tau_tilde(const DegreeDistribution& dist, double q)
{
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("tau_tilde: q must lie in [0,1]");
    const auto mass = dist.mass();
    const double a = 1.0 - q;
    const double b = 1.0 - 0.5 * q;
    double pa = 1.0;
    double pb = 1.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        pa *= a;
        pb *= b;
        if (mass[i] == 0.0) continue;
        const double k = static_cast<double>(i + 1);
        // Only small k q loses digits to cancellation; elsewhere the running
        // powers are as good as the careful form and much cheaper.
        acc += mass[i] * (k * q > 0.5 ? (1.0 - pb) - (pb - pa) : both_firms_probability(i + 1, q));
    }
    return acc < 0.0 ? 0.0 : acc;
}

double mean_degree(const DegreeDistribution& dist)
{
    const auto mass = dist.mass();
    double acc = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) acc += static_cast<double>(i + 1) * mass[i];
    return acc;
}

void write_csv(std::ostream& out, const DegreeDistribution& dist)
{
    out << "k,t_k\n";
    for (std::size_t k = 1; k <= dist.kmax(); ++k) out << k << ',' << csv::format_real(dist.t(k)) << '\n';
}

DegreeDistribution read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("degree table: empty input");
    const auto header = csv::split_line(line);
    if (header.size() != 2 || header[0] != "k" || header[1] != "t_k")
        throw InvalidArgument("degree table: expected header `k,t_k`");

    std::vector<double> mass;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto cells = csv::split_line(line);
        double k = 0.0;
        double tk = 0.0;
        if (cells.size() != 2 || !csv::parse_real(cells[0], k) || !csv::parse_real(cells[1], tk))
            throw InvalidArgument("degree table: malformed row `" + line + "`");
        if (k != static_cast<double>(mass.size() + 1))
            throw InvalidArgument("degree table: degrees must be 1..kmax in order");
        mass.push_back(tk);
    }
    const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
    if (mass.empty() || std::abs(total - 1.0) > 1e-9)
        throw InvalidArgument("degree table: masses must sum to 1");
    return DegreeDistribution::from_weights(mass);
}

} // namespace womlab

#pragma once

#include "presets.hpp"

#include "womlab/eq_baseline.hpp"
#include "womlab/network.hpp"
#include "womlab/pricing.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace womlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Market parameters plus the network they live on.
struct ModelSpec {
    MarketParams params;
    double gamma = 0.0;
    std::size_t kmax = 100;
    bool degenerate = false;    ///< everybody has exactly kmax friends
    std::string dist_file;      ///< `k,t_k` table; overrides gamma/kmax when set

    DegreeDistribution distribution() const;
};

struct SweepRow {
    double x = 0.0;
    std::string status; ///< ok, no_equilibrium, no_comparison, invalid
    std::optional<Equilibrium> eq;
};

/// Solves the stable equilibrium at every grid point. Points run in
/// parallel (WOMLAB_THREADS caps the workers); rows come back in grid order.
std::vector<SweepRow> run_sweep(const ModelSpec& base, const SweepSpec& spec);

/// Header `<var>,<outputs...>,status`; missing values are NA.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Entry point shared by the executable and the tests. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace womlab::cli

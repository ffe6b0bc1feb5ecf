#pragma once

#include "womlab/pricing.hpp"

#include <optional>
#include <string>
#include <vector>

namespace womlab::cli {

enum class SweepVariable { gamma, delta, s, kmax };

const char* to_string(SweepVariable var) noexcept;
std::optional<SweepVariable> parse_sweep_variable(const std::string& name);

/// Columns a sweep can emit besides the swept variable.
inline const std::vector<std::string> kSweepOutputs = {"q", "e_price", "profit", "eta", "dispersion"};

struct SweepSpec {
    SweepVariable variable = SweepVariable::gamma;
    double lo = 0.0;
    double hi = 1.0;
    int steps = 2;
    std::vector<std::string> outputs = kSweepOutputs;

    /// Throws InvalidArgument unless lo < hi, steps >= 2 and every output is known.
    void validate() const;
    /// Evenly spaced grid; kmax sweeps are rounded to integers.
    std::vector<double> grid() const;
};

/// Parameter set behind one figure. Figures 2-7 carry a sweep.
struct Preset {
    std::string name;
    MarketParams params;
    double gamma = 0.0;
    std::size_t kmax = 100;
    std::optional<SweepSpec> sweep;
};

/// fig1..fig8. Throws InvalidArgument for unknown names.
Preset find_preset(const std::string& name);
std::vector<std::string> preset_names();

} // namespace womlab::cli

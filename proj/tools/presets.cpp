#include "presets.hpp"

#include "womlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace womlab::cli {

const char* to_string(SweepVariable var) noexcept
{
    switch (var) {
    case SweepVariable::gamma: return "gamma";
    case SweepVariable::delta: return "delta";
    case SweepVariable::s: return "s";
    case SweepVariable::kmax: return "kmax";
    }
    return "?";
}

std::optional<SweepVariable> parse_sweep_variable(const std::string& name)
{
    if (name == "gamma") return SweepVariable::gamma;
    if (name == "delta") return SweepVariable::delta;
    if (name == "s") return SweepVariable::s;
    if (name == "kmax") return SweepVariable::kmax;
    return std::nullopt;
}

void SweepSpec::validate() const
{
    if (!(lo < hi)) throw InvalidArgument("sweep range needs lo < hi");
    if (steps < 2) throw InvalidArgument("sweep needs at least 2 steps");
    if (outputs.empty()) throw InvalidArgument("sweep needs at least one output column");
    for (const auto& o : outputs)
        if (std::find(kSweepOutputs.begin(), kSweepOutputs.end(), o) == kSweepOutputs.end())
            throw InvalidArgument("unknown sweep output `" + o + "`");
}

std::vector<double> SweepSpec::grid() const
{
    std::vector<double> xs(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        double x = lo + (hi - lo) * i / (steps - 1);
        if (i == steps - 1) x = hi;
        if (variable == SweepVariable::kmax) x = std::round(x);
        xs[static_cast<std::size_t>(i)] = x;
    }
    return xs;
}

Preset find_preset(const std::string& name)
{
    // Figure 1: benefit curve; 2-3: network density; 4-6: diffusion speed;
    // 7: search cost; 8: degree-aware search.
    if (name == "fig1") return {name, {1.0, 0.05, 0.9}, -1.0, 100, std::nullopt};
    if (name == "fig2")
        return {name, {1.0, 0.05, 0.9}, 0.0, 100, SweepSpec{SweepVariable::gamma, -2.0, 2.0, 41, {"q"}}};
    if (name == "fig3")
        return {name, {1.0, 0.05, 0.9}, 0.0, 100, SweepSpec{SweepVariable::gamma, -2.0, 2.0, 41, {"e_price"}}};
    if (name == "fig4")
        return {name, {1.0, 0.05, 0.5}, 0.0, 100, SweepSpec{SweepVariable::delta, 0.1, 0.94, 43, {"q"}}};
    if (name == "fig5")
        return {name, {1.0, 0.05, 0.5}, 0.0, 100, SweepSpec{SweepVariable::delta, 0.1, 0.94, 43, {"e_price"}}};
    if (name == "fig6")
        return {name, {1.0, 0.05, 0.5}, 0.0, 100, SweepSpec{SweepVariable::delta, 0.1, 0.94, 43, {"profit"}}};
    if (name == "fig7")
        return {name, {1.0, 0.05, 0.5}, 0.0, 100, SweepSpec{SweepVariable::s, 0.005, 0.3, 60, {"e_price"}}};
    if (name == "fig8") return {name, {1.0, 0.025, 0.92}, -2.5, 5, std::nullopt};
    throw InvalidArgument("unknown preset `" + name + "` (expected fig1..fig8)");
}

std::vector<std::string> preset_names()
{
    return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
}

} // namespace womlab::cli

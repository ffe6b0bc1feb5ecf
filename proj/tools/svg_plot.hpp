#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace womlab::cli {

/// Numeric table read from a sweep CSV: first column is x, every other
/// column with at least one numeric cell becomes a series (NA cells are gaps).
struct PlotTable {
    std::string x_label;
    std::vector<double> x;
    std::vector<std::string> series_names;
    std::vector<std::vector<double>> series;
};

/// Throws InvalidArgument on a missing header, ragged rows, a non-numeric x
/// column, no data rows or no plottable series.
PlotTable read_plot_table(std::istream& in);

/// Deterministic SVG line chart with a fixed 640x400 viewBox.
void write_svg(std::ostream& out, const PlotTable& table);

} // namespace womlab::cli

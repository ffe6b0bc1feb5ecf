#include "svg_plot.hpp"

#include "womlab/csv.hpp"
#include "womlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>

namespace womlab::cli {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 50.0;

const char* const kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick_label(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::pair<double, double> padded_range(double lo, double hi)
{
    if (lo == hi) {
        const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
        return {lo - pad, hi + pad};
    }
    return {lo, hi};
}

} // namespace

PlotTable read_plot_table(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw InvalidArgument("plot: missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = csv::split_line(line);
    if (header.size() < 2) throw InvalidArgument("plot: need at least two columns");

    std::vector<std::vector<double>> columns(header.size());
    std::vector<bool> numeric(header.size(), false);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = csv::split_line(line);
        if (cells.size() != header.size())
            throw InvalidArgument("plot: row " + std::to_string(rows + 2) + " has " + std::to_string(cells.size()) +
                                  " cells, header has " + std::to_string(header.size()));
        for (std::size_t j = 0; j < cells.size(); ++j) {
            double value = 0.0;
            if (csv::parse_real(cells[j], value)) {
                if (!std::isnan(value)) numeric[j] = true;
            } else {
                value = std::numeric_limits<double>::quiet_NaN();
            }
            columns[j].push_back(value);
        }
        ++rows;
    }
    if (rows == 0) throw InvalidArgument("plot: no data rows");

    PlotTable table;
    table.x_label = header[0];
    table.x = columns[0];
    for (double x : table.x)
        if (!std::isfinite(x)) throw InvalidArgument("plot: first column must be numeric");
    for (std::size_t j = 1; j < header.size(); ++j) {
        if (!numeric[j]) continue;
        table.series_names.push_back(header[j]);
        table.series.push_back(columns[j]);
    }
    if (table.series.empty()) throw InvalidArgument("plot: no numeric columns to draw");
    return table;
}

void write_svg(std::ostream& out, const PlotTable& table)
{
    auto [x_lo, x_hi] = std::minmax_element(table.x.begin(), table.x.end());
    double y_lo = std::numeric_limits<double>::infinity();
    double y_hi = -std::numeric_limits<double>::infinity();
    for (const auto& col : table.series)
        for (double y : col)
            if (std::isfinite(y)) {
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
    const auto [xa, xb] = padded_range(*x_lo, *x_hi);
    const auto [ya, yb] = padded_range(y_lo, y_hi);

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - xa) / (xb - xa) * plot_w; };
    auto sy = [&](double y) { return kTop + (yb - y) / (yb - ya) * plot_h; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight)
        << "\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
        << "\" fill=\"white\"/>\n";
    out << "<g stroke=\"black\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(kLeft + plot_w)
        << "\" y2=\"" << num(kTop + plot_h) << "\"/>\n";
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(kTop + plot_h) << "\"/>\n";
    out << "</g>\n";

    out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = xa + (xb - xa) * i / 4.0;
        const double fy = ya + (yb - ya) * i / 4.0;
        out << "<text x=\"" << num(sx(fx)) << "\" y=\"" << num(kTop + plot_h + 16) << "\" text-anchor=\"middle\">"
            << tick_label(fx) << "</text>\n";
        out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(sy(fy) + 4) << "\" text-anchor=\"end\">"
            << tick_label(fy) << "</text>\n";
    }
    out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 10)
        << "\" text-anchor=\"middle\">" << escape(table.x_label) << "</text>\n";
    std::string y_label;
    for (std::size_t j = 0; j < table.series_names.size(); ++j) {
        if (j) y_label += ", ";
        y_label += table.series_names[j];
    }
    out << "<text x=\"14\" y=\"" << num(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << num(kTop + plot_h / 2) << ")\">" << escape(y_label) << "</text>\n";
    out << "</g>\n";

    for (std::size_t j = 0; j < table.series.size(); ++j) {
        const char* colour = kColours[j % std::size(kColours)];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" data-series=\""
            << escape(table.series_names[j]) << "\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < table.x.size(); ++i) {
            const double y = table.series[j][i];
            if (!std::isfinite(y)) continue;
            if (!first) out << ' ';
            out << num(sx(table.x[i])) << ',' << num(sy(y));
            first = false;
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

} // namespace womlab::cli

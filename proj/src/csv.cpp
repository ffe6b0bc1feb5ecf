#include "womlab/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace womlab::csv {

std::string format_real(double value)
{
    if (std::isnan(value)) return "NA";
    if (std::isinf(value)) return value > 0 ? "Inf" : "-Inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

bool parse_real(std::string_view cell, double& value)
{
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r'))
        cell.remove_suffix(1);
    if (cell == "NA") {
        value = std::numeric_limits<double>::quiet_NaN();
        return true;
    }
    if (cell == "Inf") {
        value = std::numeric_limits<double>::infinity();
        return true;
    }
    if (cell == "-Inf") {
        value = -std::numeric_limits<double>::infinity();
        return true;
    }
    if (cell.empty()) return false;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string> split_line(std::string_view line)
{
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            break;
        }
        cells.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

} // namespace womlab::csv

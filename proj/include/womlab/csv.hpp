#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace womlab::csv {

/// 17 significant digits, `.` decimal separator, NaN spelled `NA`.
std::string format_real(double value);

/// Parses a real as written by format_real; `NA` yields NaN.
/// Returns false when the cell is not a number.
bool parse_real(std::string_view cell, double& value);

/// Splits one comma-separated line. No quoting support: our tables never
/// contain commas inside cells.
std::vector<std::string> split_line(std::string_view line);

} // namespace womlab::csv

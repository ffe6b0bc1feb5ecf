#include "womlab/roots.hpp"

#include <algorithm>

namespace womlab::roots {

std::vector<double> unit_interval_grid(double step, double eps, int points_per_decade)
{
    if (!(step > 0.0 && step < 0.5) || !(eps > 0.0 && eps < step))
        throw InvalidArgument("unit_interval_grid: need 0 < eps < step < 0.5");

    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::ceil(1.0 / step));
    grid.reserve(n + 2 * 20 * static_cast<std::size_t>(points_per_decade));
    for (std::size_t i = 1; i < n; ++i) grid.push_back(static_cast<double>(i) / static_cast<double>(n));

    const double lo_exp = std::log10(eps);
    const double hi_exp = std::log10(step);
    const int count = std::max(2, static_cast<int>(std::ceil((hi_exp - lo_exp) * points_per_decade)));
    for (int i = 0; i <= count; ++i) {
        const double x = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / count);
        grid.push_back(x);
        grid.push_back(1.0 - x);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    grid.erase(std::remove_if(grid.begin(), grid.end(), [&](double x) { return x < eps || x > 1.0 - eps; }),
               grid.end());
    return grid;
}

} // namespace womlab::roots

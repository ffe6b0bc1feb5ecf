#pragma once

#include "womlab/errors.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace womlab::roots {

/// A sub-interval [lo, hi] across which f changes sign.
struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

/// Bisection on a sign-changing bracket until hi - lo <= tol or f hits an
/// exact zero. Returns the midpoint of the final bracket.
template <class F>
double bisect(F&& f, double lo, double hi, double f_lo, double tol, int max_iter = 200)
{
    if (f_lo == 0.0) return lo;
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

template <class F>
double bisect(F&& f, double lo, double hi, double tol)
{
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if ((f_lo < 0.0) == (f_hi < 0.0) && f_lo != 0.0 && f_hi != 0.0)
        throw InvalidArgument("bisect: interval does not bracket a root");
    if (f_hi == 0.0) return hi;
    return bisect(f, lo, hi, f_lo, tol);
}

/// Evaluates f on an increasing grid and returns every adjacent pair whose
/// values change sign (a grid value of exactly zero starts a bracket).
template <class F>
std::vector<Bracket> scan_sign_changes(F&& f, const std::vector<double>& grid)
{
    std::vector<Bracket> out;
    if (grid.size() < 2) return out;
    double x_prev = grid.front();
    double f_prev = f(x_prev);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double x = grid[i];
        const double fx = f(x);
        if (f_prev == 0.0 || (f_prev < 0.0) != (fx < 0.0)) {
            if (!(fx == 0.0 && i + 1 < grid.size())) out.push_back({x_prev, x, f_prev, fx});
        }
        x_prev = x;
        f_prev = fx;
    }
    return out;
}

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

/// Increasing grid on (eps, 1 - eps): uniform with the given step, plus
/// log-spaced points towards both ends so that roots hugging 0 or 1 are
/// bracketed too.
std::vector<double> unit_interval_grid(double step, double eps, int points_per_decade = 40);

} // namespace womlab::roots

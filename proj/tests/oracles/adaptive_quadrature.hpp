// SPDX-License-Identifier: Apache-2.0
//
// Test-only adaptive Simpson quadrature. Intervals straddling a jump keep
// splitting until they are narrower than 2^-max_depth, so piecewise-constant
// integrands are resolved to roughly jump·2^-max_depth per discontinuity.
#pragma once

#include <cmath>
#include <functional>

namespace oracle {

namespace detail {

inline double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                           double fb, double m, double fm, double whole, double tol, int depth)
{
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// The range is first cut into `panels` equal pieces so that short segments
// of a step function cannot slip between the initial Simpson nodes.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int max_depth = 52, int panels = 4096)
{
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * h, hi = i + 1 == panels ? b : a + (i + 1) * h;
        const double m = 0.5 * (lo + hi);
        const double flo = f(lo), fhi = f(hi), fm = f(m);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
        total += detail::simpson_step(f, lo, flo, hi, fhi, m, fm, whole, tol / panels, max_depth);
    }
    return total;
}

} // namespace oracle

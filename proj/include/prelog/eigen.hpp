// SPDX-License-Identifier: Apache-2.0
//
// Dense Hermitian eigenvalues: Householder reduction to real symmetric
// tridiagonal form followed by implicit-shift QL.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "prelog/error.hpp"

namespace prelog {

struct EigenOptions {
    double deflation_tol = 1e-12; // relative off-diagonal size treated as zero
    int max_sweeps = 60;          // QL iterations allowed per eigenvalue
    double hermitian_tol = 1e-12; // relative asymmetry accepted on input
};

namespace detail {

/// Eigenvalues of the real symmetric tridiagonal matrix with diagonal d and
/// off-diagonal e (e[i] couples i and i+1; e.size() == d.size(), last entry
/// ignored). Overwrites d with the unsorted eigenvalues.
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, const EigenOptions& opt)
{
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e[n - 1] = 0.0;
    // Off-diagonals below eps·‖T‖ are dropped too, otherwise clusters of
    // near-zero eigenvalues never meet the relative test.
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm = std::max(norm, std::abs(d[i]) + 2.0 * std::abs(e[i]));
    const double floor = std::numeric_limits<double>::epsilon() * norm;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= opt.deflation_tol * dd || std::abs(e[m]) <= floor) break;
            }
            if (m != l) {
                if (iter++ == opt.max_sweeps)
                    throw InternalError("hermitian_eigenvalues: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    const double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace detail

/// Ascending eigenvalues of an n×n Hermitian matrix given row-major. The
/// input is taken by value and reduced in place.
inline std::vector<double> hermitian_eigenvalues_dense(std::vector<std::complex<double>> a,
                                                       std::size_t n,
                                                       const EigenOptions& opt = {})
{
    using cplx = std::complex<double>;
    if (a.size() != n * n) throw InternalError("hermitian_eigenvalues: matrix is not n×n");
    auto at = [&](std::size_t r, std::size_t c) -> cplx& { return a[r * n + c]; };

    double scale = 0.0;
    for (const auto& z : a) scale = std::max(scale, std::abs(z));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r; c < n; ++c) {
            if (std::abs(at(r, c) - std::conj(at(c, r))) > opt.hermitian_tol * scale)
                throw InternalError("hermitian_eigenvalues: input is not Hermitian at (" +
                                    std::to_string(r) + ", " + std::to_string(c) + ")");
        }
    }

    std::vector<double> d(n), e(n, 0.0);
    std::vector<cplx> v(n), u(n);

    // Reduce column k below the diagonal to a multiple of the unit vector with
    // the reflector I - 2vv^H, applied on both sides of the trailing block.
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;
        double norm2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) norm2 += std::norm(at(k + 1 + i, k));
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) {
            e[k] = 0.0;
            continue;
        }
        const cplx x0 = at(k + 1, k);
        const double ax0 = std::abs(x0);
        const cplx phase = ax0 == 0.0 ? cplx{1.0, 0.0} : x0 / ax0;
        const cplx alpha = -phase * norm;

        for (std::size_t i = 0; i < len; ++i) v[i] = at(k + 1 + i, k);
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) {
            e[k] = std::abs(alpha);
            continue;
        }
        const double vinv = 1.0 / std::sqrt(vnorm2);
        for (std::size_t i = 0; i < len; ++i) v[i] *= vinv;

        // u = A22 v, gamma = v^H A22 v, then q = u - gamma v.
        for (std::size_t i = 0; i < len; ++i) {
            cplx acc{0.0, 0.0};
            const cplx* row = &at(k + 1 + i, k + 1);
            for (std::size_t j = 0; j < len; ++j) acc += row[j] * v[j];
            u[i] = acc;
        }
        cplx gamma{0.0, 0.0};
        for (std::size_t i = 0; i < len; ++i) gamma += std::conj(v[i]) * u[i];
        const double g = gamma.real();
        for (std::size_t i = 0; i < len; ++i) u[i] -= g * v[i];

        // A22 <- A22 - 2 v q^H - 2 q v^H
        for (std::size_t i = 0; i < len; ++i) {
            cplx* row = &at(k + 1 + i, k + 1);
            const cplx vi = 2.0 * v[i];
            const cplx qi = 2.0 * u[i];
            for (std::size_t j = 0; j < len; ++j)
                row[j] -= vi * std::conj(u[j]) + qi * std::conj(v[j]);
        }
        // Phases of the complex off-diagonal do not affect the spectrum.
        e[k] = norm;
        at(k + 1, k) = alpha;
    }
    if (n >= 2) e[n - 2] = std::abs(at(n - 1, n - 2));
    for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i).real();

    detail::tridiagonal_ql(d, e, opt);
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace prelog

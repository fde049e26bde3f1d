// SPDX-License-Identifier: Apache-2.0
//
// Test-only dense eigen oracle: cyclic Jacobi rotations on the real symmetric
// 2n×2n embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix, whose spectrum
// is the Hermitian spectrum with every eigenvalue doubled.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace oracle {

inline std::vector<double> jacobi_symmetric_eigenvalues(std::vector<double> a, std::size_t n)
{
    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, total = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                total += at(r, c) * at(r, c);
                if (r != c) off += at(r, c) * at(r, c);
            }
        if (off <= 1e-30 * total || off == 0.0) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Ascending eigenvalues of a row-major Hermitian matrix.
inline std::vector<double> hermitian_eigenvalues(const std::vector<std::complex<double>>& h,
                                                 std::size_t n)
{
    const std::size_t m = 2 * n;
    std::vector<double> a(m * m);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const auto z = h[r * n + c];
            a[r * m + c] = z.real();
            a[r * m + (c + n)] = -z.imag();
            a[(r + n) * m + c] = z.imag();
            a[(r + n) * m + (c + n)] = z.real();
        }
    const auto doubled = jacobi_symmetric_eigenvalues(std::move(a), m);
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    return ev;
}

} // namespace oracle

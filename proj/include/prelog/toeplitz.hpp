// SPDX-License-Identifier: Apache-2.0
//
// Hermitian Toeplitz fading covariances and the Szegő log-det rate
// (1/n) Σ log(1 + snr λ_k) that converges to the spectral log-integral.
#pragma once

#include <cmath>
#include <vector>

#include "prelog/eigen.hpp"
#include "prelog/error.hpp"
#include "prelog/parallel.hpp"
#include "prelog/spectra.hpp"

namespace prelog {

inline constexpr std::size_t default_max_dimension = 4096;

/// n×n Hermitian Toeplitz matrix M[j][k] = r(k-j), r(-m) = conj(r(m)).
class ToeplitzCov {
public:
    std::size_t dimension() const { return first_row_.size(); }
    std::span<const complex> first_row() const { return first_row_; }
    double variance() const { return first_row_.front().real(); }

    complex operator()(std::size_t j, std::size_t k) const
    {
        return k >= j ? first_row_[k - j] : std::conj(first_row_[j - k]);
    }

    /// Row-major dense copy.
    std::vector<complex> dense() const
    {
        const std::size_t n = dimension();
        std::vector<complex> m(n * n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) m[j * n + k] = (*this)(j, k);
        return m;
    }

    /// Leading principal submatrix of size n (again Toeplitz).
    ToeplitzCov leading(std::size_t n) const
    {
        if (n == 0 || n > dimension()) throw DomainError("ToeplitzCov::leading: bad size");
        return ToeplitzCov(std::vector<complex>(first_row_.begin(), first_row_.begin() + n));
    }

private:
    friend ToeplitzCov covariance_matrix(const AutocovarianceSeq&, std::size_t, std::size_t);
    explicit ToeplitzCov(std::vector<complex> row) : first_row_(std::move(row)) {}

    std::vector<complex> first_row_;
};

inline ToeplitzCov covariance_matrix(const AutocovarianceSeq& r, std::size_t n,
                                     std::size_t max_dimension = default_max_dimension)
{
    detail::require_domain(n >= 1, "covariance_matrix: dimension must be at least 1");
    detail::require_domain(n <= max_dimension, "covariance_matrix: dimension " +
                                                   std::to_string(n) + " exceeds cap " +
                                                   std::to_string(max_dimension));
    detail::require_domain(r.values.size() >= n,
                           "covariance_matrix: autocovariance provides too few lags");
    detail::require_domain(r.variance() > 0.0, "covariance_matrix: r(0) must be positive");
    return ToeplitzCov(std::vector<complex>(r.values.begin(), r.values.begin() + n));
}

inline std::vector<double> hermitian_eigenvalues(const ToeplitzCov& m, const EigenOptions& opt = {})
{
    return hermitian_eigenvalues_dense(m.dense(), m.dimension(), opt);
}

inline double szego_logdet_rate(const SpectralDensity& s, double snr, std::size_t n,
                                std::size_t max_dimension = default_max_dimension)
{
    detail::require_domain(snr > 0.0 && std::isfinite(snr),
                           "szego_logdet_rate: snr must be positive and finite");
    detail::require_domain(n >= 1, "szego_logdet_rate: dimension must be at least 1");
    const auto cov = covariance_matrix(autocovariance_seq(s, n - 1), n, max_dimension);
    const auto eig = hermitian_eigenvalues(cov);
    const double floor = -1e-9 * cov.variance();
    double acc = 0.0;
    for (double lambda : eig) {
        if (lambda < floor)
            throw InternalError("szego_logdet_rate: covariance is not positive semidefinite");
        acc += std::log1p(snr * std::max(lambda, 0.0));
    }
    return acc / static_cast<double>(n);
}

struct SzegoPoint {
    std::size_t n;
    double rate;
    double integral;
    double gap;
};

/// |rate(n) - ∫ log(1 + snr F')| for each requested dimension, in input order.
inline std::vector<SzegoPoint> szego_gap(const SpectralDensity& s, double snr,
                                         std::span<const std::size_t> dims,
                                         std::size_t max_dimension = default_max_dimension)
{
    const double integral = spectral_log_integral(s, snr);
    return parallel_map(dims.size(), [&](std::size_t i) {
        const double rate = szego_logdet_rate(s, snr, dims[i], max_dimension);
        return SzegoPoint{dims[i], rate, integral, std::abs(rate - integral)};
    });
}

} // namespace prelog

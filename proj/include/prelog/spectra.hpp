// SPDX-License-Identifier: Apache-2.0
//
// Spectral distribution functions with piecewise-constant density on the
// harmonic interval [-1/2, 1/2], their autocovariances, and the spectral
// log-integral  ∫ log(1 + snr F'(λ)) dλ.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prelog/error.hpp"

namespace prelog {

using complex = std::complex<double>;

/// sin(πx)/(πx) with sinc(0) = 1.
inline double sinc(double x)
{
    if (x == 0.0) return 1.0;
    // Reduce to the nearest integer first so sinc vanishes exactly at nonzero integers.
    const double k = std::nearbyint(x);
    const double f = x - k;
    const double s = std::sin(std::numbers::pi * f);
    return (std::fmod(k, 2.0) == 0.0 ? s : -s) / (std::numbers::pi * x);
}

/// Flat piece of a spectral density: F'(λ) = value on (lo, hi].
struct Segment {
    double lo;
    double hi;
    double value;

    double length() const { return hi - lo; }
    double mass() const { return (hi - lo) * value; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Absolutely continuous spectral distribution function of a centered
/// stationary process, stored as a partition of [-1/2, 1/2] into flat pieces.
///
/// Instances are only obtainable through make_piecewise and the named
/// constructors below, so every object satisfies: the segments tile
/// [-1/2, 1/2] exactly, every density is finite and nonnegative, and
/// variance() is the total mass.
class SpectralDensity {
public:
    std::span<const Segment> segments() const { return segments_; }
    double variance() const { return variance_; }

    double max_density() const
    {
        double m = 0.0;
        for (const auto& s : segments_) m = std::max(m, s.value);
        return m;
    }

    /// F'(λ). A shared endpoint belongs to the segment on its left; -1/2
    /// belongs to the first segment.
    double density_at(double lambda) const
    {
        if (!(lambda >= -0.5 && lambda <= 0.5))
            throw DomainError("density_at: harmonic outside [-1/2, 1/2]");
        auto it = std::lower_bound(segments_.begin(), segments_.end(), lambda,
                                   [](const Segment& s, double l) { return s.hi < l; });
        return it->value;
    }

    friend bool operator==(const SpectralDensity&, const SpectralDensity&) = default;

private:
    friend SpectralDensity make_piecewise(std::vector<Segment>, std::optional<double>);
    SpectralDensity(std::vector<Segment> segs, double variance)
        : segments_(std::move(segs)), variance_(variance)
    {
    }

    std::vector<Segment> segments_;
    double variance_ = 0.0;
};

/// Validates a segment list and builds the density. When target_variance is
/// given, a total mass further than 1e-9 from it is rejected.
inline SpectralDensity make_piecewise(std::vector<Segment> segments,
                                      std::optional<double> target_variance = std::nullopt)
{
    if (segments.empty()) throw ValidationError("spectral density: no segments");
    if (segments.front().lo != -0.5 || segments.back().hi != 0.5)
        throw ValidationError("spectral density: segments must span exactly [-0.5, 0.5]");

    double mass = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || !(s.lo < s.hi))
            throw ValidationError("spectral density: segment " + std::to_string(i) +
                                  " must satisfy lo < hi");
        if (!std::isfinite(s.value) || s.value < 0.0)
            throw ValidationError("spectral density: segment " + std::to_string(i) +
                                  " has negative or non-finite density");
        if (i > 0) {
            const double prev_hi = segments[i - 1].hi;
            if (s.lo < prev_hi)
                throw ValidationError("spectral density: segments " + std::to_string(i - 1) +
                                      " and " + std::to_string(i) + " overlap");
            if (s.lo > prev_hi)
                throw ValidationError("spectral density: gap before segment " +
                                      std::to_string(i));
        }
        mass += s.mass();
    }
    if (target_variance && std::abs(mass - *target_variance) > 1e-9)
        throw ValidationError("spectral density: total mass " + std::to_string(mass) +
                              " does not match variance " + std::to_string(*target_variance));
    return SpectralDensity(std::move(segments), mass);
}

/// Flat band of density variance/(2W) on |λ| <= W, zero elsewhere.
inline SpectralDensity make_rect_band(double half_width, double variance = 1.0)
{
    detail::require_domain(half_width > 0.0 && half_width <= 0.5,
                           "make_rect_band: half-width must lie in (0, 1/2]");
    detail::require_domain(variance > 0.0 && std::isfinite(variance),
                           "make_rect_band: variance must be positive");
    const double height = variance / (2.0 * half_width);
    if (half_width == 0.5) return make_piecewise({{-0.5, 0.5, variance}});
    return make_piecewise({{-0.5, -half_width, 0.0},
                           {-half_width, half_width, height},
                           {half_width, 0.5, 0.0}});
}

/// Spectrum of the product of a random-parity alternating 0/1 process with a
/// variance-2 band of half-width W: density 1/(4W) on |λ| <= W and on
/// 1/2 - W <= |λ| <= 1/2.
inline SpectralDensity make_onoff_spectrum(double half_width)
{
    detail::require_domain(half_width > 0.0 && half_width < 0.25,
                           "make_onoff_spectrum: half-width must lie in (0, 1/4)");
    const double w = half_width;
    const double height = 1.0 / (4.0 * w);
    return make_piecewise({{-0.5, -0.5 + w, height},
                           {-0.5 + w, -w, 0.0},
                           {-w, w, height},
                           {w, 0.5 - w, 0.0},
                           {0.5 - w, 0.5, height}});
}

/// Lebesgue measure of {λ : F'(λ) = 0}. Exact zero comparison.
inline double zero_set_measure(const SpectralDensity& s)
{
    double mu = 0.0;
    for (const auto& seg : s.segments())
        if (seg.value == 0.0) mu += seg.length();
    return mu;
}

/// r(m) = ∫ e^{i2πmλ} dF(λ), summed exactly over the flat pieces. Each piece
/// contributes value·L·e^{i2πmc}·sinc(mL) with midpoint c and length L.
inline complex autocovariance(const SpectralDensity& s, long long lag)
{
    if (lag == 0) return {s.variance(), 0.0};
    const double m = static_cast<double>(lag);
    complex r{0.0, 0.0};
    for (const auto& seg : s.segments()) {
        if (seg.value == 0.0) continue;
        const double len = seg.length();
        const double mid = 0.5 * (seg.lo + seg.hi);
        const double amp = seg.value * len * sinc(m * len);
        const double phase = 2.0 * std::numbers::pi * m * mid;
        r += complex{amp * std::cos(phase), amp * std::sin(phase)};
    }
    return r;
}

/// Autocovariance sequence r(0..m_max). r(0) is real and nonnegative and
/// |r(m)| <= r(0) up to rounding.
struct AutocovarianceSeq {
    std::vector<complex> values;

    double variance() const { return values.empty() ? 0.0 : values.front().real(); }
    std::size_t max_lag() const { return values.empty() ? 0 : values.size() - 1; }

    /// r(m) for negative lags via r(-m) = conj(r(m)).
    complex at(long long lag) const
    {
        const auto idx = static_cast<std::size_t>(lag < 0 ? -lag : lag);
        if (idx >= values.size()) throw DomainError("autocovariance: lag beyond stored range");
        return lag < 0 ? std::conj(values[idx]) : values[idx];
    }
};

inline AutocovarianceSeq make_autocovariance_seq(std::vector<complex> values)
{
    if (values.empty()) throw ValidationError("autocovariance: empty sequence");
    const complex r0 = values.front();
    if (r0.imag() != 0.0 || !(r0.real() >= 0.0))
        throw ValidationError("autocovariance: r(0) must be real and nonnegative");
    const double bound = r0.real() * (1.0 + 1e-12) + 1e-300;
    for (std::size_t m = 1; m < values.size(); ++m)
        if (std::abs(values[m]) > bound)
            throw ValidationError("autocovariance: |r(m)| exceeds r(0) at lag " +
                                  std::to_string(m));
    return AutocovarianceSeq{std::move(values)};
}

inline AutocovarianceSeq autocovariance_seq(const SpectralDensity& s, std::size_t max_lag)
{
    std::vector<complex> v(max_lag + 1);
    for (std::size_t m = 0; m <= max_lag; ++m) v[m] = autocovariance(s, static_cast<long long>(m));
    return make_autocovariance_seq(std::move(v));
}

/// ∫ log(1 + snr F'(λ)) dλ in nats, closed form over the flat pieces.
inline double spectral_log_integral(const SpectralDensity& s, double snr)
{
    detail::require_domain(snr > 0.0 && std::isfinite(snr),
                           "spectral_log_integral: snr must be positive and finite");
    double acc = 0.0;
    for (const auto& seg : s.segments()) acc += seg.length() * std::log1p(snr * seg.value);
    return acc;
}

/// High-SNR limit of spectral_log_integral(S, snr)/log(snr), with the finite
/// SNR ratios that approach it.
struct LimitingRatio {
    double limit;
    std::vector<std::pair<double, double>> finite_ratios; // (snr, ratio)
};

inline LimitingRatio limiting_ratio(const SpectralDensity& s)
{
    LimitingRatio out{1.0 - zero_set_measure(s), {}};
    for (double snr : {1e3, 1e6, 1e12})
        out.finite_ratios.emplace_back(snr, spectral_log_integral(s, snr) / std::log(snr));
    return out;
}

} // namespace prelog

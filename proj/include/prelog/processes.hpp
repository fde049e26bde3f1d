// SPDX-License-Identifier: Apache-2.0
//
// Sample-path generators for the fading processes, the channel
// Y_k = H_k x_k + Z_k, and Monte Carlo checks of the marginal laws.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prelog/error.hpp"
#include "prelog/models.hpp"
#include "prelog/random.hpp"
#include "prelog/spectra.hpp"

namespace prelog {

struct SamplePath {
    std::vector<complex> values;
    std::string model_name;
    std::uint64_t seed = 0;

    std::size_t size() const { return values.size(); }
};

/// Number of random-phase harmonics used for Gaussian synthesis. Paths are
/// Gaussian only in the limit of many harmonics.
inline constexpr std::size_t default_harmonics = 4096;

namespace detail {

/// Stratified inverse-CDF draws from the normalized spectral measure: the
/// j-th frequency is F^{-1}((j + U_j)/M).
inline std::vector<double> spectral_frequencies(const SpectralDensity& s, std::size_t count,
                                                CounterRng& rng)
{
    std::vector<Segment> support;
    std::vector<double> cumulative;
    double total = 0.0;
    for (const auto& seg : s.segments()) {
        if (seg.value == 0.0) continue;
        support.push_back(seg);
        total += seg.mass();
        cumulative.push_back(total);
    }
    std::vector<double> freqs(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double u = (static_cast<double>(j) + rng.uniform()) / static_cast<double>(count);
        const double target = u * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
        if (it == cumulative.end()) --it;
        const auto idx = static_cast<std::size_t>(it - cumulative.begin());
        const double before = idx == 0 ? 0.0 : cumulative[idx - 1];
        const auto& seg = support[idx];
        freqs[j] = std::clamp(seg.lo + (target - before) / seg.value, seg.lo, seg.hi);
    }
    return freqs;
}

/// out[k] = mean + amp·Σ_j exp(i(2π f_j k + φ_j)), k = 0..out.size()-1. The
/// phasors are re-anchored every block so rounding drift stays bounded.
inline void synthesize_harmonics(std::span<const double> freqs, std::span<const double> phases,
                                 double amp, complex mean, std::span<complex> out)
{
    constexpr std::size_t block = 1024;
    const std::size_t m = freqs.size();
    std::vector<double> pr(m), pi(m), cr(m), ci(m);
    for (std::size_t j = 0; j < m; ++j) {
        cr[j] = std::cos(2.0 * std::numbers::pi * freqs[j]);
        ci[j] = std::sin(2.0 * std::numbers::pi * freqs[j]);
    }
    for (std::size_t k0 = 0; k0 < out.size(); k0 += block) {
        const double kk = static_cast<double>(k0);
        for (std::size_t j = 0; j < m; ++j) {
            const double cycles = freqs[j] * kk;
            const double angle = 2.0 * std::numbers::pi * (cycles - std::round(cycles)) + phases[j];
            pr[j] = std::cos(angle);
            pi[j] = std::sin(angle);
        }
        const std::size_t stop = std::min(out.size(), k0 + block);
        double* __restrict prp = pr.data();
        double* __restrict pip = pi.data();
        const double* __restrict crp = cr.data();
        const double* __restrict cip = ci.data();
        for (std::size_t k = k0; k < stop; ++k) {
            double sr = 0.0, si = 0.0;
#pragma omp simd reduction(+ : sr, si)
            for (std::size_t j = 0; j < m; ++j) {
                sr += prp[j];
                si += pip[j];
                const double nr = prp[j] * crp[j] - pip[j] * cip[j];
                pip[j] = prp[j] * cip[j] + pip[j] * crp[j];
                prp[j] = nr;
            }
            out[k] = mean + complex{amp * sr, amp * si};
        }
    }
}

/// cos θ + i sin θ adjusted by at most a few ulps so that std::abs is exactly 1.
inline complex exact_unit_phasor(double theta)
{
    double c = std::cos(theta), s = std::sin(theta);
    if (std::abs(complex{c, s}) == 1.0) return {c, s};
    const double a = std::hypot(c, s);
    c /= a;
    s /= a;
    for (int step = 0; step < 16; ++step) {
        const double mod = std::abs(complex{c, s});
        if (mod == 1.0) return {c, s};
        double& big = std::abs(c) >= std::abs(s) ? c : s;
        big = std::nextafter(big, mod > 1.0 ? 0.0 : std::copysign(2.0, big));
    }
    throw InternalError("exact_unit_phasor: could not reach unit modulus");
}

} // namespace detail

/// Stationary circularly-symmetric (asymptotically) Gaussian path with spectrum
/// S plus the mean d, by spectral sampling with `harmonics` random-phase terms.
inline SamplePath simulate_gaussian(const SpectralDensity& s, complex mean_d, std::size_t n,
                                    std::uint64_t seed, std::size_t harmonics = default_harmonics,
                                    std::string model_name = "gaussian")
{
    detail::require_domain(n >= 1, "simulate_gaussian: length must be at least 1");
    detail::require_domain(harmonics >= 1, "simulate_gaussian: need at least one harmonic");
    SamplePath path{std::vector<complex>(n, mean_d), std::move(model_name), seed};
    if (s.variance() == 0.0) return path;

    CounterRng freq_rng(seed, Stream::harmonic_frequencies);
    CounterRng phase_rng(seed, Stream::harmonic_phases);
    const auto freqs = detail::spectral_frequencies(s, harmonics, freq_rng);
    std::vector<double> phases(harmonics);
    for (auto& p : phases) p = 2.0 * std::numbers::pi * phase_rng.uniform();

    const double amp = std::sqrt(s.variance() / static_cast<double>(harmonics));
    detail::synthesize_harmonics(freqs, phases, amp, mean_d, path.values);
    return path;
}

/// H_k = A_k·B_k: A alternates 0/1 with a fair random parity and B is a
/// variance-2 Gaussian band of half-width W. Index k = 0 is the first sample.
inline SamplePath simulate_onoff(double half_width, std::size_t n, std::uint64_t seed,
                                 std::size_t harmonics = default_harmonics)
{
    detail::require_domain(half_width > 0.0 && half_width < 0.25,
                           "simulate_onoff: half-width must lie in (0, 1/4)");
    auto path = simulate_gaussian(make_rect_band(half_width, 2.0), {}, n, seed, harmonics, "onoff");
    CounterRng parity_rng(seed, Stream::onoff_parity);
    const std::size_t zero_parity = parity_rng() & 1u;
    for (std::size_t k = zero_parity; k < n; k += 2) path.values[k] = {0.0, 0.0};
    return path;
}

/// H_k = e^{iΘ_k}, Θ_k IID uniform on [-π, π).
inline SamplePath simulate_phase_noise(std::size_t n, std::uint64_t seed)
{
    detail::require_domain(n >= 1, "simulate_phase_noise: length must be at least 1");
    CounterRng rng(seed, Stream::phase_noise);
    SamplePath path{std::vector<complex>(n), "phase-noise", seed};
    for (auto& h : path.values)
        h = detail::exact_unit_phasor(2.0 * std::numbers::pi * rng.uniform() - std::numbers::pi);
    return path;
}

inline SamplePath simulate(const FadingModel& model, std::size_t n, std::uint64_t seed,
                           std::size_t harmonics = default_harmonics)
{
    switch (model.family) {
    case ModelFamily::onoff: return simulate_onoff(model.band_half_width, n, seed, harmonics);
    case ModelFamily::phase_noise: return simulate_phase_noise(n, seed);
    case ModelFamily::gaussian:
        if (model.tail_law != TailLaw::rayleigh)
            throw DomainError("simulate: model '" + model.name +
                              "' has no sampler for tail law " + std::string(to_string(model.tail_law)));
        return simulate_gaussian(model.spectrum, model.mean_d, n, seed, harmonics, model.name);
    }
    throw InternalError("simulate: unknown model family");
}

/// IID draws from the marginal law of H_1.
inline std::vector<complex> sample_marginal(const FadingModel& model, std::size_t n,
                                            std::uint64_t seed)
{
    CounterRng rng(seed, Stream::marginal);
    std::vector<complex> out(n);
    for (auto& h : out) {
        switch (model.tail_law) {
        case TailLaw::rayleigh: h = model.mean_d + rng.complex_normal(1.0); break;
        case TailLaw::onoff: {
            const bool on = (rng() & 1u) != 0;
            const complex b = rng.complex_normal(2.0);
            h = on ? b : complex{0.0, 0.0};
            break;
        }
        case TailLaw::unit_modulus:
            h = detail::exact_unit_phasor(2.0 * std::numbers::pi * rng.uniform() - std::numbers::pi);
            break;
        }
    }
    return out;
}

/// Closed-form P(|H_1| >= Υ).
inline double tail_probability(const FadingModel& model, double upsilon)
{
    return model.tail(upsilon);
}

struct TailCheck {
    double closed_form;
    double empirical;
    double tolerance; // 3·sqrt(p(1-p)/n)
    bool agrees;
};

/// Monte Carlo cross-check of tail_probability on IID marginal draws.
inline TailCheck tail_probability_mc(const FadingModel& model, double upsilon,
                                     std::size_t samples = 1'000'000, std::uint64_t seed = 0)
{
    detail::require_domain(samples >= 1, "tail_probability_mc: need at least one sample");
    const double p = tail_probability(model, upsilon);
    const auto draws = sample_marginal(model, samples, seed);
    const auto hits = std::count_if(draws.begin(), draws.end(),
                                    [&](const complex& h) { return std::abs(h) >= upsilon; });
    const double n = static_cast<double>(samples);
    const double emp = static_cast<double>(hits) / n;
    const double tol = 3.0 * std::sqrt(p * (1.0 - p) / n);
    return TailCheck{p, emp, tol, std::abs(emp - p) <= tol};
}

struct ChannelOutput {
    std::vector<complex> y;
    std::vector<complex> x;
    double sigma2;

    /// h(Z_k) = log(πeσ²) in nats.
    double noise_entropy() const { return std::log(std::numbers::pi * std::numbers::e * sigma2); }
};

/// y_k = H_k x_k + Z_k with Z IID circularly-symmetric Gaussian of variance σ².
/// When peak_amplitude is set, every |x_k| must satisfy |x_k|² <= A².
inline ChannelOutput channel_apply(const SamplePath& path, std::span<const complex> x,
                                   double sigma2, std::uint64_t seed,
                                   std::optional<double> peak_amplitude = std::nullopt)
{
    detail::require_domain(x.size() == path.size(), "channel_apply: input length mismatch");
    detail::require_domain(sigma2 > 0.0 && std::isfinite(sigma2),
                           "channel_apply: noise variance must be positive");
    if (peak_amplitude) {
        const double a2 = *peak_amplitude * *peak_amplitude;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (std::norm(x[k]) > a2 * (1.0 + 8.0 * std::numeric_limits<double>::epsilon()))
                throw DomainError("channel_apply: input " + std::to_string(k) +
                                  " violates the peak-power constraint");
    }
    CounterRng rng(seed, Stream::channel_noise);
    ChannelOutput out{std::vector<complex>(x.size()), std::vector<complex>(x.begin(), x.end()), sigma2};
    for (std::size_t k = 0; k < x.size(); ++k)
        out.y[k] = path.values[k] * x[k] + rng.complex_normal(sigma2);
    return out;
}

/// Biased estimator r̂(m) = (1/n) Σ_k (H_{k+m} − H̄)(H_k − H̄)*, m = 0..m_max.
inline AutocovarianceSeq empirical_autocov(const SamplePath& path, std::size_t m_max)
{
    const std::size_t n = path.size();
    detail::require_domain(m_max < n, "empirical_autocov: m_max must be below the path length");
    complex mean{0.0, 0.0};
    for (const auto& h : path.values) mean += h;
    mean /= static_cast<double>(n);
    std::vector<complex> centered(n);
    for (std::size_t k = 0; k < n; ++k) centered[k] = path.values[k] - mean;

    std::vector<complex> r(m_max + 1);
    for (std::size_t m = 0; m <= m_max; ++m) {
        complex acc{0.0, 0.0};
        for (std::size_t k = 0; k + m < n; ++k) acc += centered[k + m] * std::conj(centered[k]);
        r[m] = acc / static_cast<double>(n);
    }
    r[0] = {r[0].real(), 0.0};
    return make_autocovariance_seq(std::move(r));
}

} // namespace prelog

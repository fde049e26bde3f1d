// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "prelog/error.hpp"
#include "prelog/spectra.hpp"

namespace prelog {

/// Law of |H_1| for the built-in fading families.
enum class TailLaw {
    rayleigh,     // |H|^2 ~ Exp(1): unit-variance circularly-symmetric Gaussian
    onoff,        // A·B, A ~ Bernoulli(1/2), |B|^2 ~ Exp(mean 2)
    unit_modulus, // |H| = 1 surely (phase noise)
};

inline std::string_view to_string(TailLaw law)
{
    switch (law) {
    case TailLaw::rayleigh: return "rayleigh";
    case TailLaw::onoff: return "onoff";
    case TailLaw::unit_modulus: return "unit-modulus";
    }
    return "?";
}

inline TailLaw tail_law_from_string(std::string_view name)
{
    if (name == "rayleigh") return TailLaw::rayleigh;
    if (name == "onoff") return TailLaw::onoff;
    if (name == "unit-modulus" || name == "phase-noise") return TailLaw::unit_modulus;
    throw ValidationError("unknown tail law '" + std::string(name) + "'");
}

enum class ModelFamily { gaussian, onoff, phase_noise };

/// Unit-variance stationary fading law: spectrum of the centered process,
/// the mean d, and the marginal law of |H_1|.
struct FadingModel {
    std::string name;
    ModelFamily family;
    SpectralDensity spectrum;
    complex mean_d{0.0, 0.0};
    TailLaw tail_law;
    double band_half_width = 0.0; // onoff family only

    double mass_at_zero() const { return tail_law == TailLaw::onoff ? 0.5 : 0.0; }

    /// P(|H_1| >= upsilon) for upsilon > 0.
    double tail(double upsilon) const
    {
        detail::require_domain(upsilon > 0.0, "tail: upsilon must be positive");
        switch (tail_law) {
        case TailLaw::rayleigh: return std::exp(-upsilon * upsilon);
        case TailLaw::onoff: return 0.5 * std::exp(-0.5 * upsilon * upsilon);
        case TailLaw::unit_modulus: return upsilon <= 1.0 ? 1.0 : 0.0;
        }
        return 0.0;
    }
};

/// Zero-mean Gaussian fading with a flat band of half-width W.
inline FadingModel rayleigh_band_model(double half_width)
{
    return FadingModel{"rayleigh-band", ModelFamily::gaussian, make_rect_band(half_width),
                       {}, TailLaw::rayleigh, half_width};
}

/// H_k = A_k·B_k with alternating random-parity A and variance-2 band B.
inline FadingModel onoff_model(double half_width)
{
    return FadingModel{"onoff", ModelFamily::onoff, make_onoff_spectrum(half_width),
                       {}, TailLaw::onoff, half_width};
}

/// H_k = e^{iΘ_k} with IID uniform phases: flat spectrum, unit modulus.
inline FadingModel phase_noise_model()
{
    return FadingModel{"phase-noise", ModelFamily::phase_noise, make_rect_band(0.5),
                       {}, TailLaw::unit_modulus, 0.5};
}

/// User-supplied spectrum with one of the built-in marginal laws. Only the
/// Rayleigh law can be simulated.
inline FadingModel custom_model(SpectralDensity spectrum, TailLaw law, std::string name = "custom")
{
    if (std::abs(spectrum.variance() - 1.0) > 1e-9)
        throw ValidationError("custom model: spectrum must have unit variance");
    return FadingModel{std::move(name), ModelFamily::gaussian, std::move(spectrum), {}, law, 0.0};
}

} // namespace prelog

// SPDX-License-Identifier: Apache-2.0
//
// Capacity and pre-log bounds for peak-power-limited noncoherent fading
// channels. All values are in nats.
#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prelog/error.hpp"
#include "prelog/models.hpp"
#include "prelog/parallel.hpp"
#include "prelog/spectra.hpp"

namespace prelog {

/// n points log-spaced from lo to hi inclusive; endpoints are exact.
inline std::vector<double> log_grid(double lo, double hi, std::size_t points)
{
    detail::require_domain(lo > 0.0 && hi > 0.0, "log_grid: bounds must be positive");
    if (points == 1) {
        detail::require_domain(lo == hi, "log_grid: a single point needs lo == hi");
        return {lo};
    }
    detail::require_domain(points >= 2 && lo < hi, "log_grid: need lo < hi and points >= 2");
    const double a = std::log10(lo), b = std::log10(hi);
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

/// Υ grid used when none is given: 60 log-spaced points on [1e-3, 4].
inline std::vector<double> default_upsilon_grid() { return log_grid(1e-3, 4.0, 60); }

/// P(|H|>=Υ)·log snr − P(|H|>=Υ)·(1 − log Υ²) − ∫ log(1 + snr F'(λ)) dλ.
/// Reported raw; it may be negative.
inline double capacity_lower_bound(const FadingModel& model, double snr, double upsilon)
{
    detail::require_domain(snr > 0.0 && std::isfinite(snr),
                           "capacity_lower_bound: snr must be positive and finite");
    detail::require_domain(upsilon > 0.0 && std::isfinite(upsilon),
                           "capacity_lower_bound: upsilon must be positive");
    const double p = model.tail(upsilon);
    return p * std::log(snr) - p * (1.0 - std::log(upsilon * upsilon)) -
           spectral_log_integral(model.spectrum, snr);
}

struct UpsilonChoice {
    double upsilon;
    double lower_bound;
};

/// Grid argmax of capacity_lower_bound; ties go to the smaller Υ.
inline UpsilonChoice optimize_upsilon(const FadingModel& model, double snr,
                                      std::span<const double> grid)
{
    detail::require_domain(!grid.empty(), "optimize_upsilon: empty upsilon grid");
    std::optional<UpsilonChoice> best;
    for (double u : grid) {
        const double lb = capacity_lower_bound(model, snr, u);
        if (!best || lb > best->lower_bound || (lb == best->lower_bound && u < best->upsilon))
            best = UpsilonChoice{u, lb};
    }
    return *best;
}

/// μ{λ : F'(λ) = 0}, valid when the fading law has no mass point at zero.
inline double prelog_lower_bound(const FadingModel& model)
{
    if (model.mass_at_zero() > 0.0)
        throw PreconditionError("prelog_lower_bound: fading law of '" + model.name +
                                "' has a mass point at zero");
    return zero_set_measure(model.spectrum);
}

/// p·log(1 + snr/p) with p = P(|H_1| > 0): coherent capacity under the
/// average-power relaxation, via Jensen.
inline double coherent_avg_upper_bound(const FadingModel& model, double snr)
{
    detail::require_domain(snr > 0.0 && std::isfinite(snr),
                           "coherent_avg_upper_bound: snr must be positive and finite");
    const double p = 1.0 - model.mass_at_zero();
    if (p == 0.0) return 0.0;
    return p * std::log1p(snr / p);
}

/// Pre-log upper bound P(|H_1| > 0).
inline double masspoint_prelog_upper(const FadingModel& model) { return 1.0 - model.mass_at_zero(); }

/// Memoryless phase noise, σ² = 1, A² = snr, |X|² uniform on [0, A²]:
/// log A² − [½ log(4πe(2 + 4A²)) − log 2].
inline double phase_noise_lower_bound(double snr)
{
    detail::require_domain(snr > 0.0 && std::isfinite(snr),
                           "phase_noise_lower_bound: snr must be positive and finite");
    constexpr double four_pi_e = 4.0 * std::numbers::pi * std::numbers::e;
    return std::log(snr) - (0.5 * std::log(four_pi_e * (2.0 + 4.0 * snr)) - std::log(2.0));
}

/// ½ log(1 + snr/2): high-SNR capacity of the phase-noise channel under an
/// average-power constraint.
inline double phase_noise_upper_bound(double snr)
{
    detail::require_domain(snr > 0.0 && std::isfinite(snr),
                           "phase_noise_upper_bound: snr must be positive and finite");
    return 0.5 * std::log1p(0.5 * snr);
}

/// MISO pre-log lower bound: transmit from the antenna whose fading spectrum
/// has the largest zero set.
inline double miso_prelog_lower(std::span<const SpectralDensity> spectra,
                                std::span<const double> masses_at_zero)
{
    detail::require_domain(!spectra.empty(), "miso_prelog_lower: no antennas");
    detail::require_domain(spectra.size() == masses_at_zero.size(),
                           "miso_prelog_lower: one mass-at-zero per antenna required");
    double best = 0.0;
    for (std::size_t t = 0; t < spectra.size(); ++t) {
        if (masses_at_zero[t] != 0.0)
            throw PreconditionError("miso_prelog_lower: antenna " + std::to_string(t) +
                                    " has a mass point at zero");
        best = std::max(best, zero_set_measure(spectra[t]));
    }
    return best;
}

enum class BoundKind { lower_lb, upper_coherent, phase_lb, phase_ub };

inline std::string_view to_string(BoundKind k)
{
    switch (k) {
    case BoundKind::lower_lb: return "LOWER_LB";
    case BoundKind::upper_coherent: return "UPPER_COHERENT";
    case BoundKind::phase_lb: return "PHASE_LB";
    case BoundKind::phase_ub: return "PHASE_UB";
    }
    return "?";
}

struct BoundPoint {
    double snr;
    double value;
    std::optional<double> upsilon; // set for LOWER_LB
};

struct BoundCurve {
    BoundKind kind;
    std::vector<BoundPoint> points;
};

namespace detail {

inline void require_increasing(std::span<const double> snr_grid, const char* who)
{
    require_domain(!snr_grid.empty(), std::string(who) + ": empty snr grid");
    for (std::size_t i = 0; i < snr_grid.size(); ++i) {
        require_domain(snr_grid[i] > 0.0 && std::isfinite(snr_grid[i]),
                       std::string(who) + ": snr values must be positive");
        if (i > 0)
            require_domain(snr_grid[i] > snr_grid[i - 1],
                           std::string(who) + ": snr grid must be strictly increasing");
    }
}

} // namespace detail

/// Evaluates one bound kind over an increasing SNR grid. Grid points run
/// concurrently; output order follows the grid.
inline BoundCurve bound_curve(BoundKind kind, const FadingModel& model,
                              std::span<const double> snr_grid,
                              std::span<const double> upsilon_grid)
{
    detail::require_increasing(snr_grid, "bound_curve");
    BoundCurve curve{kind, parallel_map(snr_grid.size(), [&](std::size_t i) {
                         const double snr = snr_grid[i];
                         switch (kind) {
                         case BoundKind::lower_lb: {
                             const auto best = optimize_upsilon(model, snr, upsilon_grid);
                             return BoundPoint{snr, best.lower_bound, best.upsilon};
                         }
                         case BoundKind::upper_coherent:
                             return BoundPoint{snr, coherent_avg_upper_bound(model, snr), {}};
                         case BoundKind::phase_lb:
                             return BoundPoint{snr, phase_noise_lower_bound(snr), {}};
                         case BoundKind::phase_ub:
                             return BoundPoint{snr, phase_noise_upper_bound(snr), {}};
                         }
                         throw InternalError("bound_curve: unknown kind");
                     })};
    return curve;
}

struct RatioPoint {
    double snr;
    double ratio;                  // max(lb, 0) / log snr
    double lower_bound;            // raw value
    std::optional<double> upsilon; // absent for the phase-noise bound
    bool floored;                  // lb was negative
};

struct PrelogReport {
    std::string model_name;
    std::optional<double> analytic_limit;
    std::vector<RatioPoint> finite_ratios;
    std::optional<double> upper_prelog;
    double zero_set_measure;
    /// Upper pre-log strictly below the zero-set measure of the spectrum.
    bool note1_gap;
};

/// Finite-SNR pre-log trajectory LB(snr)/log snr with the analytic limits that
/// apply to the model family.
inline PrelogReport prelog_report(const FadingModel& model, std::span<const double> snr_grid,
                                  std::span<const double> upsilon_grid)
{
    detail::require_increasing(snr_grid, "prelog_report");
    detail::require_domain(snr_grid.front() > 1.0, "prelog_report: snr values must exceed 1");
    detail::require_domain(!upsilon_grid.empty(), "prelog_report: empty upsilon grid");

    const bool phase_noise = model.family == ModelFamily::phase_noise;
    PrelogReport report;
    report.model_name = model.name;
    report.zero_set_measure = zero_set_measure(model.spectrum);

    report.finite_ratios = parallel_map(snr_grid.size(), [&](std::size_t i) {
        const double snr = snr_grid[i];
        RatioPoint pt{snr, 0.0, 0.0, std::nullopt, false};
        if (phase_noise) {
            pt.lower_bound = phase_noise_lower_bound(snr);
        } else {
            const auto best = optimize_upsilon(model, snr, upsilon_grid);
            pt.lower_bound = best.lower_bound;
            pt.upsilon = best.upsilon;
        }
        pt.floored = pt.lower_bound < 0.0;
        pt.ratio = std::max(pt.lower_bound, 0.0) / std::log(snr);
        return pt;
    });

    if (phase_noise) {
        report.analytic_limit = 0.5;
        report.upper_prelog = 0.5;
    } else if (model.mass_at_zero() > 0.0) {
        report.upper_prelog = masspoint_prelog_upper(model);
    } else {
        report.analytic_limit = prelog_lower_bound(model);
        report.upper_prelog = 1.0;
    }
    report.note1_gap = report.upper_prelog && *report.upper_prelog < report.zero_set_measure;
    return report;
}

} // namespace prelog

// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles/adaptive_quadrature.hpp"
#include "prelog/spectra.hpp"
#include "test_support.hpp"

using namespace prelog;
using Catch::Approx;

TEST_CASE("rect band construction", "[spectra]")
{
    SECTION("W = 1/2 is the IID density")
    {
        const auto s = make_rect_band(0.5);
        REQUIRE(s.segments().size() == 1);
        CHECK(s.segments()[0].value == 1.0);
        CHECK(s.density_at(-0.5) == 1.0);
        CHECK(s.density_at(0.3) == 1.0);
    }
    SECTION("W = 1/4")
    {
        const auto s = make_rect_band(0.25);
        CHECK(s.density_at(0.0) == 2.0);
        CHECK(s.density_at(0.25) == 2.0); // shared endpoint goes left
        CHECK(s.density_at(0.26) == 0.0);
        CHECK(s.density_at(-0.3) == 0.0);
        CHECK(s.variance() == 1.0);
    }
    SECTION("variance argument scales the height")
    {
        const auto s = make_rect_band(0.1, 2.0);
        CHECK(s.density_at(0.0) == Approx(10.0).epsilon(1e-15));
        CHECK(std::abs(s.variance() - 2.0) <= 1e-12);
    }
    CHECK_THROWS_AS(make_rect_band(0.0), DomainError);
    CHECK_THROWS_AS(make_rect_band(-0.1), DomainError);
    CHECK_THROWS_AS(make_rect_band(0.51), DomainError);
}

TEST_CASE("on-off spectrum construction", "[spectra]")
{
    const auto s = make_onoff_spectrum(1.0 / 16.0);
    CHECK(s.density_at(0.0) == 4.0);
    CHECK(s.density_at(0.5) == 4.0);
    CHECK(s.density_at(-0.45) == 4.0);
    CHECK(s.density_at(0.25) == 0.0);
    CHECK(zero_set_measure(s) == 0.75);
    CHECK(std::abs(s.variance() - 1.0) <= 1e-12);

    CHECK(zero_set_measure(make_onoff_spectrum(0.125)) == 0.5);
    CHECK_THROWS_AS(make_onoff_spectrum(0.3), DomainError);
    CHECK_THROWS_AS(make_onoff_spectrum(0.25), DomainError);
    CHECK_THROWS_AS(make_onoff_spectrum(0.0), DomainError);
}

TEST_CASE("make_piecewise validation", "[spectra]")
{
    CHECK(make_piecewise({{-0.5, 0.5, 1.0}}) == make_rect_band(0.5));

    const auto two = make_piecewise({{-0.5, 0.0, 0.0}, {0.0, 0.5, 2.0}}, 1.0);
    CHECK(two.variance() == 1.0);
    CHECK(zero_set_measure(two) == 0.5);

    CHECK_THROWS_AS(make_piecewise({{-0.5, 0.1, 1.0}, {0.0, 0.5, 1.0}}), ValidationError);
    CHECK_THROWS_AS(make_piecewise({{-0.5, 0.0, 1.0}, {0.1, 0.5, 1.0}}), ValidationError);
    CHECK_THROWS_AS(make_piecewise({{-0.5, 0.5, -1.0}}), ValidationError);
    CHECK_THROWS_AS(make_piecewise({{-0.4, 0.5, 1.0}}), ValidationError);
    CHECK_THROWS_AS(make_piecewise({{-0.5, 0.5, 1.0}}, 2.0), ValidationError);
    CHECK_THROWS_AS(make_piecewise({}), ValidationError);
    CHECK_THROWS_AS(make_piecewise({{-0.5, -0.5, 1.0}, {-0.5, 0.5, 1.0}}), ValidationError);
}

TEST_CASE("zero-set measure", "[spectra]")
{
    CHECK(zero_set_measure(make_rect_band(0.5)) == 0.0);
    CHECK(zero_set_measure(make_rect_band(0.1)) == Approx(0.8).epsilon(1e-15));
    CHECK(zero_set_measure(make_onoff_spectrum(1.0 / 16.0)) == 0.75);
}

TEST_CASE("autocovariance closed forms", "[spectra]")
{
    SECTION("rect band gives sinc(2Wm)")
    {
        for (double w : {0.05, 0.1, 0.25, 0.4}) {
            const auto s = make_rect_band(w);
            for (int m = -20; m <= 20; ++m) {
                const auto r = autocovariance(s, m);
                CHECK(r.real() == Approx(sinc(2.0 * w * m)).margin(1e-15));
                CHECK(std::abs(r.imag()) <= 1e-15);
            }
        }
        CHECK(std::abs(autocovariance(make_rect_band(0.25), 2)) <= 1e-15);
    }
    SECTION("variance-2 band gives 2 sinc(2Wm)")
    {
        const auto s = make_rect_band(0.1, 2.0);
        for (int m = 0; m <= 30; ++m)
            CHECK(autocovariance(s, m).real() == Approx(2.0 * sinc(0.2 * m)).margin(1e-14));
    }
    SECTION("on-off spectrum gives 1{m even} sinc(2Wm)")
    {
        const double w = 1.0 / 16.0;
        const auto s = make_onoff_spectrum(w);
        for (int m = 0; m <= 40; ++m) {
            const double expect = (m % 2 == 0) ? sinc(2.0 * w * m) : 0.0;
            CHECK(autocovariance(s, m).real() == Approx(expect).margin(1e-14));
            CHECK(std::abs(autocovariance(s, m).imag()) <= 1e-14);
        }
        CHECK(std::abs(autocovariance(s, 1)) <= 1e-15);
    }
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1.0) == Approx(0.0).margin(1e-16));
}

TEST_CASE("autocovariance is Hermitian and bounded by r(0)", "[spectra][property]")
{
    std::mt19937_64 gen(42);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = test_support::random_density(gen);
        const double r0 = autocovariance(s, 0).real();
        CHECK(r0 == s.variance());
        for (int m = -64; m <= 64; ++m) {
            const auto r = autocovariance(s, m);
            CHECK(std::abs(r) <= r0 * (1.0 + 1e-12));
            CHECK(autocovariance(s, -m) == std::conj(r));
        }
    }
}

TEST_CASE("constructor outputs carry their declared mass", "[spectra][property]")
{
    for (double w : {0.01, 0.05, 0.1, 0.2, 0.3, 0.45, 0.5})
        CHECK(std::abs(make_rect_band(w).variance() - 1.0) <= 1e-12);
    for (double w : {0.01, 1.0 / 16.0, 0.1, 0.125, 0.2, 0.24})
        CHECK(std::abs(make_onoff_spectrum(w).variance() - 1.0) <= 1e-12);
}

TEST_CASE("spectral log-integral closed forms", "[spectra]")
{
    for (double snr : {0.5, 1.0, 100.0, 1e6})
        CHECK(spectral_log_integral(make_rect_band(0.5), snr) == Approx(std::log1p(snr)).epsilon(1e-15));

    const double v = spectral_log_integral(make_rect_band(0.25), 100.0);
    CHECK(v == Approx(0.5 * std::log(201.0)).epsilon(1e-15));
    CHECK(v == Approx(2.6516).margin(1e-4));

    CHECK_THROWS_AS(spectral_log_integral(make_rect_band(0.5), 0.0), DomainError);
    CHECK_THROWS_AS(spectral_log_integral(make_rect_band(0.5), -1.0), DomainError);
}

namespace {

// Density lookup written against the raw segment list, independent of
// SpectralDensity::density_at.
double oracle_density(const std::vector<Segment>& segs, double x)
{
    for (const auto& s : segs)
        if (x <= s.hi) return s.value;
    return segs.back().value;
}

} // namespace

TEST_CASE("spectral log-integral matches adaptive quadrature", "[spectra][oracle]")
{
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> log_snr(-1.0, 8.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = test_support::random_density(gen);
        const std::vector<Segment> segs(s.segments().begin(), s.segments().end());
        const double snr = std::pow(10.0, log_snr(gen));
        const double quad = oracle::adaptive_simpson(
            [&](double x) { return std::log1p(snr * oracle_density(segs, x)); }, -0.5, 0.5);
        CHECK(std::abs(spectral_log_integral(s, snr) - quad) <= 1e-9);
    }
}

TEST_CASE("spectral log-integral is monotone and bounded in snr", "[spectra][property]")
{
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = test_support::random_density(gen);
        double prev = 0.0;
        for (int k = -2; k <= 14; ++k) {
            const double snr = std::pow(10.0, k);
            const double v = spectral_log_integral(s, snr);
            CHECK(v >= prev);
            CHECK(v <= std::log1p(snr * s.max_density()) + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("limiting ratio", "[spectra]")
{
    const auto iid = limiting_ratio(make_rect_band(0.5));
    CHECK(iid.limit == 1.0);
    REQUIRE(iid.finite_ratios.size() == 3);
    CHECK(iid.finite_ratios.back().first == 1e12);
    CHECK(std::abs(iid.finite_ratios.back().second - 1.0) <= 4e-2);

    CHECK(limiting_ratio(make_rect_band(0.1)).limit == Approx(0.2).epsilon(1e-14));
    CHECK(limiting_ratio(make_onoff_spectrum(1.0 / 16.0)).limit == 0.25);
}

TEST_CASE("finite ratios approach the limiting ratio", "[spectra][property]")
{
    std::mt19937_64 gen(99);
    std::vector<SpectralDensity> cases{make_rect_band(0.5), make_rect_band(0.1),
                                       make_rect_band(0.02), make_onoff_spectrum(1.0 / 16.0)};
    for (int i = 0; i < 30; ++i) cases.push_back(test_support::random_density(gen));

    for (const auto& s : cases) {
        const double limit = limiting_ratio(s).limit;
        double prev_err = INFINITY;
        for (int k = 12; k <= 60; k += 4) {
            const double snr = std::pow(10.0, k);
            const double ratio = spectral_log_integral(s, snr) / std::log(snr);
            CHECK(ratio <= limit + 0.05);
            const double err = std::abs(ratio - limit);
            CHECK(err <= prev_err + 1e-12);
            prev_err = err;
        }
    }
}

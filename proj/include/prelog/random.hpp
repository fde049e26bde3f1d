// SPDX-License-Identifier: Apache-2.0
//
// Philox4x32-10 counter-based generator. A (seed, stream) pair selects an
// independent sequence; draws never share mutable state across streams.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace prelog {

using Philox4x32Block = std::array<std::uint32_t, 4>;

/// One Philox4x32-10 block for counter ctr under key.
constexpr Philox4x32Block philox4x32_10(Philox4x32Block ctr, std::array<std::uint32_t, 2> key)
{
    constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
    constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += w0;
            key[1] += w1;
        }
        const std::uint64_t p0 = std::uint64_t{m0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{m1} * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

/// Stream identifiers; one per consumer so fading and noise draws stay
/// independent for a shared seed.
enum class Stream : std::uint32_t {
    harmonic_frequencies = 1,
    harmonic_phases = 2,
    onoff_parity = 3,
    phase_noise = 4,
    channel_noise = 5,
    marginal = 6,
};

/// Sequential view of one Philox stream. Satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint32_t;

    CounterRng(std::uint64_t seed, Stream stream, std::uint32_t substream = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(static_cast<std::uint32_t>(stream)), substream_(substream)
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        if (lane_ == 4) {
            const Philox4x32Block ctr{static_cast<std::uint32_t>(block_),
                                      static_cast<std::uint32_t>(block_ >> 32), stream_, substream_};
            buf_ = philox4x32_10(ctr, key_);
            ++block_;
            lane_ = 0;
        }
        return buf_[lane_++];
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform()
    {
        const std::uint64_t hi = (*this)() >> 5;
        const std::uint64_t lo = (*this)() >> 6;
        return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
    }

    /// Uniform on (0, 1).
    double uniform_open()
    {
        double u;
        do u = uniform();
        while (u == 0.0);
        return u;
    }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance (Box–Muller).
    std::complex<double> complex_normal(double variance = 1.0)
    {
        const double radius = std::sqrt(-variance * std::log(uniform_open()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_;
    std::uint32_t substream_;
    std::uint64_t block_ = 0;
    Philox4x32Block buf_{};
    int lane_ = 4;
};

} // namespace prelog

// SPDX-License-Identifier: Apache-2.0
//
// CSV, JSON and binary encodings of the library's value types. Numbers are
// written with 17 significant digits so every value round-trips exactly.
#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prelog/bounds.hpp"
#include "prelog/error.hpp"
#include "prelog/processes.hpp"
#include "prelog/spectra.hpp"
#include "prelog/toeplitz.hpp"

namespace prelog {

using json = nlohmann::json;

inline std::string format_number(double v)
{
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

// ---- spectral density ------------------------------------------------------

inline json to_json(const SpectralDensity& s)
{
    json segs = json::array();
    for (const auto& seg : s.segments()) segs.push_back({seg.lo, seg.hi, seg.value});
    return json{{"segments", std::move(segs)}, {"variance", s.variance()}};
}

/// Parses {"segments": [[lo, hi, value], ...], "variance": v}. The declared
/// variance must match the total mass within 1e-9.
inline SpectralDensity spectral_density_from_json(const json& j)
{
    try {
        if (!j.is_object() || !j.contains("segments"))
            throw ValidationError("spectral density JSON: missing \"segments\"");
        std::vector<Segment> segs;
        for (const auto& row : j.at("segments")) {
            if (!row.is_array() || row.size() != 3)
                throw ValidationError("spectral density JSON: each segment is [lo, hi, value]");
            segs.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
        }
        std::optional<double> variance;
        if (j.contains("variance")) variance = j.at("variance").get<double>();
        return make_piecewise(std::move(segs), variance);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("spectral density JSON: ") + e.what());
    }
}

// ---- bound curves and pre-log reports ---------------------------------------

inline void write_csv(std::ostream& os, const BoundCurve& c)
{
    os << "snr,value,upsilon_star\n";
    for (const auto& p : c.points)
        os << format_number(p.snr) << ',' << format_number(p.value) << ','
           << (p.upsilon ? format_number(*p.upsilon) : std::string{}) << '\n';
}

inline json to_json(const BoundCurve& c)
{
    json rows = json::array();
    for (const auto& p : c.points) {
        json r{{"snr", p.snr}, {"value", p.value}};
        r["upsilon_star"] = p.upsilon ? json(*p.upsilon) : json(nullptr);
        rows.push_back(std::move(r));
    }
    return json{{"kind", std::string(to_string(c.kind))}, {"points", std::move(rows)}};
}

inline json to_json(const PrelogReport& r)
{
    json rows = json::array();
    for (const auto& p : r.finite_ratios) {
        json row{{"snr", p.snr}, {"ratio", p.ratio}, {"lb", p.lower_bound}, {"floored", p.floored}};
        row["upsilon_star"] = p.upsilon ? json(*p.upsilon) : json(nullptr);
        rows.push_back(std::move(row));
    }
    json out{{"model", r.model_name},
             {"zero_set_measure", r.zero_set_measure},
             {"note1_gap", r.note1_gap},
             {"finite_ratios", std::move(rows)}};
    out["analytic_limit"] = r.analytic_limit ? json(*r.analytic_limit) : json(nullptr);
    out["upper_prelog"] = r.upper_prelog ? json(*r.upper_prelog) : json(nullptr);
    return out;
}

/// Summary lines prefixed with '#', then one row per SNR.
inline void write_csv(std::ostream& os, const PrelogReport& r)
{
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : "none"; };
    os << "# model: " << r.model_name << '\n'
       << "# analytic_limit: " << opt(r.analytic_limit) << '\n'
       << "# upper_prelog: " << opt(r.upper_prelog) << '\n'
       << "# zero_set_measure: " << format_number(r.zero_set_measure) << '\n'
       << "# note1-gap: " << (r.note1_gap ? "true" : "false") << '\n';
    os << "snr,ratio,lb,upsilon_star,floored\n";
    for (const auto& p : r.finite_ratios)
        os << format_number(p.snr) << ',' << format_number(p.ratio) << ','
           << format_number(p.lower_bound) << ','
           << (p.upsilon ? format_number(*p.upsilon) : std::string{}) << ','
           << (p.floored ? "true" : "false") << '\n';
}

inline void write_csv(std::ostream& os, const std::vector<SzegoPoint>& pts)
{
    os << "n,rate,integral,gap\n";
    for (const auto& p : pts)
        os << p.n << ',' << format_number(p.rate) << ',' << format_number(p.integral) << ','
           << format_number(p.gap) << '\n';
}

inline json to_json(const std::vector<SzegoPoint>& pts)
{
    json rows = json::array();
    for (const auto& p : pts)
        rows.push_back({{"n", p.n}, {"rate", p.rate}, {"integral", p.integral}, {"gap", p.gap}});
    return rows;
}

// ---- sample paths -------------------------------------------------------------

inline void write_csv(std::ostream& os, const SamplePath& path)
{
    os << "k,re,im\n";
    for (std::size_t k = 0; k < path.size(); ++k)
        os << k << ',' << format_number(path.values[k].real()) << ','
           << format_number(path.values[k].imag()) << '\n';
}

inline json to_json(const SamplePath& path)
{
    json re = json::array(), im = json::array();
    for (const auto& h : path.values) {
        re.push_back(h.real());
        im.push_back(h.imag());
    }
    return json{{"model", path.model_name}, {"seed", path.seed}, {"n", path.size()},
                {"re", std::move(re)}, {"im", std::move(im)}};
}

namespace detail {

inline void put_u64_le(std::ostream& os, std::uint64_t v)
{
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
    os.write(b.data(), b.size());
}

inline std::uint64_t get_u64_le(std::istream& is)
{
    std::array<unsigned char, 8> b{};
    if (!is.read(reinterpret_cast<char*>(b.data()), b.size()))
        throw ValidationError("binary path: truncated input");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

} // namespace detail

/// 16-byte header (u64 n, u64 seed), then interleaved re/im as IEEE-754
/// binary64, all little-endian.
inline void write_binary(std::ostream& os, const SamplePath& path)
{
    detail::put_u64_le(os, path.size());
    detail::put_u64_le(os, path.seed);
    for (const auto& h : path.values) {
        detail::put_u64_le(os, std::bit_cast<std::uint64_t>(h.real()));
        detail::put_u64_le(os, std::bit_cast<std::uint64_t>(h.imag()));
    }
}

inline SamplePath read_binary(std::istream& is)
{
    SamplePath path;
    const std::uint64_t n = detail::get_u64_le(is);
    path.seed = detail::get_u64_le(is);
    path.values.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1u << 24)));
    for (std::uint64_t k = 0; k < n; ++k) {
        const double re = std::bit_cast<double>(detail::get_u64_le(is));
        const double im = std::bit_cast<double>(detail::get_u64_le(is));
        path.values.emplace_back(re, im);
    }
    return path;
}

} // namespace prelog

// SPDX-License-Identifier: Apache-2.0
//
// prelog_lab command implementations. Each command renders its whole output
// into memory first, so a failed run never leaves a partial file behind.
#pragma once

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "prelog/prelog.hpp"

namespace prelog::cli {

enum ExitCode : int { ok = 0, usage = 2, io = 3, numeric = 4 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json, bin };

struct RunConfig {
    std::string command;
    std::string model = "rayleigh-band:W=0.1";
    std::string snr;     // "lo:hi:points" (log-spaced) or "a,b,c"; empty = command default
    std::string upsilon = "1e-3:4:60";
    std::string n;       // dimension list (szego) or path length (simulate)
    std::uint64_t seed = 1;
    std::string out;     // empty = stdout
    std::string table_out;
    Format format = Format::csv;
    std::string spectra; // miso antenna list
    std::size_t harmonics = default_harmonics;
    std::size_t lags = 8;
};

// ---- parsing ------------------------------------------------------------------

/// Decimal number or a fraction "a/b".
inline double parse_number(std::string_view text)
{
    auto one = [&](std::string_view t) {
        double v = 0.0;
        const auto* end = t.data() + t.size();
        auto [ptr, ec] = std::from_chars(t.data(), end, v);
        if (ec != std::errc{} || ptr != end || t.empty())
            throw UsageError("not a number: '" + std::string(t) + "'");
        return v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos)
        return one(text.substr(0, slash)) / one(text.substr(slash + 1));
    return one(text);
}

inline std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

/// "lo:hi:points" → log-spaced grid; "a,b,c" → explicit list.
inline std::vector<double> parse_grid(std::string_view spec, bool sweep)
{
    if (spec.find(':') != std::string_view::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3) throw UsageError("grid must be lo:hi:points");
        const double lo = parse_number(parts[0]), hi = parse_number(parts[1]);
        const double pts = parse_number(parts[2]);
        if (!(lo > 0.0) || !(lo < hi)) throw UsageError("grid needs 0 < lo < hi");
        if (pts < 2 || pts != std::floor(pts)) throw UsageError("grid needs an integer point count >= 2");
        return log_grid(lo, hi, static_cast<std::size_t>(pts));
    }
    std::vector<double> values;
    for (auto item : split(spec, ',')) values.push_back(parse_number(item));
    if (values.empty()) throw UsageError("empty grid");
    if (sweep && values.size() < 2) throw UsageError("sweeps need at least two grid points");
    return values;
}

inline std::vector<std::size_t> parse_sizes(std::string_view spec)
{
    std::vector<std::size_t> out;
    for (auto item : split(spec, ',')) {
        const double v = parse_number(item);
        if (!(v >= 1) || v != std::floor(v) || v > 1e12)
            throw UsageError("expected a positive integer, got '" + std::string(item) + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline SpectralDensity load_spectrum(const std::string& path)
{
    const auto text = read_file(path);
    const auto j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("'" + path + "' is not valid JSON");
    return spectral_density_from_json(j);
}

/// Model mini-language: name[:key=value,...]. Built-ins: rayleigh-band:W=,
/// onoff:W=, phase-noise, custom:spectrum=<json>,tail=<rayleigh|onoff|unit-modulus>.
inline FadingModel parse_model(std::string_view spec)
{
    const auto colon = spec.find(':');
    const std::string name(spec.substr(0, colon));
    std::vector<std::pair<std::string, std::string>> params;
    if (colon != std::string_view::npos) {
        for (auto kv : split(spec.substr(colon + 1), ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string_view::npos) throw UsageError("model parameter without '=': " + std::string(kv));
            params.emplace_back(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
        }
    }
    auto param = [&](const std::string& key) -> std::optional<std::string> {
        for (const auto& [k, v] : params)
            if (k == key) return v;
        return std::nullopt;
    };
    auto require_only = [&](std::initializer_list<std::string_view> allowed) {
        for (const auto& [k, v] : params)
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
                throw UsageError("model '" + name + "' has no parameter '" + k + "'");
    };
    auto half_width = [&] {
        const auto w = param("W");
        if (!w) throw UsageError("model '" + name + "' needs W=<half-width>");
        return parse_number(*w);
    };

    if (name == "rayleigh-band") {
        require_only({"W"});
        return rayleigh_band_model(half_width());
    }
    if (name == "onoff") {
        require_only({"W"});
        return onoff_model(half_width());
    }
    if (name == "phase-noise") {
        require_only({});
        return phase_noise_model();
    }
    if (name == "custom") {
        require_only({"spectrum", "tail"});
        const auto file = param("spectrum");
        if (!file) throw UsageError("custom model needs spectrum=<file.json>");
        const auto tail = param("tail").value_or("rayleigh");
        return custom_model(load_spectrum(*file), tail_law_from_string(tail));
    }
    throw UsageError("unknown model '" + name + "'");
}

/// MISO antenna list: each item is W=<half-width> (flat band) or a JSON
/// spectrum file.
inline std::vector<SpectralDensity> parse_antennas(std::string_view spec)
{
    if (spec.empty()) throw UsageError("miso needs --spectra");
    std::vector<SpectralDensity> out;
    for (auto item : split(spec, ',')) {
        if (item.starts_with("W="))
            out.push_back(make_rect_band(parse_number(item.substr(2))));
        else
            out.push_back(load_spectrum(std::string(item)));
    }
    return out;
}

// ---- commands ---------------------------------------------------------------------

inline void require_text_format(const RunConfig& cfg)
{
    if (cfg.format == Format::bin) throw UsageError("binary format is only available for simulate");
}

inline std::string cmd_spectrum(const RunConfig& cfg)
{
    require_text_format(cfg);
    const auto model = parse_model(cfg.model);
    const auto& s = model.spectrum;
    const auto limit = limiting_ratio(s);
    const auto acf = autocovariance_seq(s, cfg.lags);
    std::ostringstream os;
    if (cfg.format == Format::json) {
        json ratios = json::array();
        for (const auto& [snr, r] : limit.finite_ratios)
            ratios.push_back({{"snr", snr}, {"ratio", r}, {"integral", spectral_log_integral(s, snr)}});
        json lags = json::array();
        for (std::size_t m = 0; m < acf.values.size(); ++m)
            lags.push_back({{"lag", m}, {"re", acf.values[m].real()}, {"im", acf.values[m].imag()}});
        json j{{"model", model.name},
               {"spectrum", to_json(s)},
               {"zero_set_measure", zero_set_measure(s)},
               {"limiting_ratio", limit.limit},
               {"finite_ratios", std::move(ratios)},
               {"autocovariance", std::move(lags)}};
        os << j.dump(2) << '\n';
    } else {
        os << "# model: " << model.name << '\n'
           << "# zero_set_measure: " << format_number(zero_set_measure(s)) << '\n'
           << "# limiting_ratio: " << format_number(limit.limit) << '\n';
        for (const auto& [snr, r] : limit.finite_ratios)
            os << "# ratio@" << format_number(snr) << ": " << format_number(r) << '\n';
        os << "lag,re,im\n";
        for (std::size_t m = 0; m < acf.values.size(); ++m)
            os << m << ',' << format_number(acf.values[m].real()) << ','
               << format_number(acf.values[m].imag()) << '\n';
    }
    return os.str();
}

inline std::string cmd_bound_sweep(const RunConfig& cfg)
{
    require_text_format(cfg);
    const auto model = parse_model(cfg.model);
    const auto snr = parse_grid(cfg.snr.empty() ? "1e1:1e12:12" : cfg.snr, true);
    const auto ups = parse_grid(cfg.upsilon, false);
    const auto lb = bound_curve(BoundKind::lower_lb, model, snr, ups);
    const auto ub = bound_curve(BoundKind::upper_coherent, model, snr, ups);
    std::ostringstream os;
    if (cfg.format == Format::json) {
        json rows = json::array();
        for (std::size_t i = 0; i < snr.size(); ++i)
            rows.push_back({{"snr", lb.points[i].snr},
                            {"lb", lb.points[i].value},
                            {"upsilon_star", *lb.points[i].upsilon},
                            {"ub_coherent", ub.points[i].value}});
        os << json{{"model", model.name}, {"rows", std::move(rows)}}.dump(2) << '\n';
    } else {
        os << "snr,lb,upsilon_star,ub_coherent\n";
        for (std::size_t i = 0; i < snr.size(); ++i)
            os << format_number(lb.points[i].snr) << ',' << format_number(lb.points[i].value) << ','
               << format_number(*lb.points[i].upsilon) << ',' << format_number(ub.points[i].value)
               << '\n';
    }
    return os.str();
}

inline std::string cmd_prelog_report(const RunConfig& cfg)
{
    require_text_format(cfg);
    const auto model = parse_model(cfg.model);
    const auto snr = parse_grid(cfg.snr.empty() ? "1e4:1e12:5" : cfg.snr, false);
    const auto ups = parse_grid(cfg.upsilon, false);
    const auto report = prelog_report(model, snr, ups);
    std::ostringstream os;
    if (cfg.format == Format::json)
        os << to_json(report).dump(2) << '\n';
    else
        write_csv(os, report);
    return os.str();
}

inline std::string cmd_szego(const RunConfig& cfg)
{
    require_text_format(cfg);
    const auto model = parse_model(cfg.model);
    const auto snr = parse_grid(cfg.snr.empty() ? "100" : cfg.snr, false);
    if (snr.size() != 1) throw UsageError("szego takes a single --snr value");
    const auto dims = parse_sizes(cfg.n.empty() ? "32,64,128,256,512" : cfg.n);
    const auto pts = szego_gap(model.spectrum, snr.front(), dims);
    std::ostringstream os;
    if (cfg.format == Format::json)
        os << json{{"model", model.name}, {"snr", snr.front()}, {"rows", to_json(pts)}}.dump(2) << '\n';
    else
        write_csv(os, pts);
    return os.str();
}

/// Empirical vs analytic autocovariance table for a simulated path.
inline std::string autocov_table(const FadingModel& model, const SamplePath& path, std::size_t lags)
{
    const auto emp = empirical_autocov(path, std::min(lags, path.size() - 1));
    std::size_t nonzero = 0;
    for (const auto& h : path.values) nonzero += h != complex{0.0, 0.0};
    std::ostringstream os;
    os << "# model: " << model.name << '\n'
       << "# n: " << path.size() << '\n'
       << "# seed: " << path.seed << '\n'
       << "# nonzero_fraction: " << format_number(double(nonzero) / double(path.size())) << '\n'
       << "lag,emp_re,emp_im,analytic_re,analytic_im\n";
    for (std::size_t m = 0; m < emp.values.size(); ++m) {
        const auto a = autocovariance(model.spectrum, static_cast<long long>(m));
        os << m << ',' << format_number(emp.values[m].real()) << ','
           << format_number(emp.values[m].imag()) << ',' << format_number(a.real()) << ','
           << format_number(a.imag()) << '\n';
    }
    return os.str();
}

struct SimulateOutput {
    std::string path;
    std::string table;
};

inline SimulateOutput cmd_simulate(const RunConfig& cfg)
{
    const auto model = parse_model(cfg.model);
    const auto lens = parse_sizes(cfg.n.empty() ? "100000" : cfg.n);
    if (lens.size() != 1) throw UsageError("simulate takes a single --n");
    const auto path = simulate(model, lens.front(), cfg.seed, cfg.harmonics);
    std::ostringstream os;
    switch (cfg.format) {
    case Format::csv: write_csv(os, path); break;
    case Format::json: os << to_json(path).dump() << '\n'; break;
    case Format::bin: write_binary(os, path); break;
    }
    return {os.str(), autocov_table(model, path, cfg.lags)};
}

inline std::string cmd_miso(const RunConfig& cfg)
{
    require_text_format(cfg);
    const auto antennas = parse_antennas(cfg.spectra);
    const std::vector<double> masses(antennas.size(), 0.0);
    const double xi = miso_prelog_lower(antennas, masses);
    std::ostringstream os;
    if (cfg.format == Format::json) {
        json rows = json::array();
        for (std::size_t t = 0; t < antennas.size(); ++t)
            rows.push_back({{"antenna", t}, {"zero_set_measure", zero_set_measure(antennas[t])}});
        os << json{{"miso_prelog_lower", xi}, {"antennas", std::move(rows)}}.dump(2) << '\n';
    } else {
        os << "# miso_prelog_lower: " << format_number(xi) << '\n' << "antenna,zero_set_measure\n";
        for (std::size_t t = 0; t < antennas.size(); ++t)
            os << t << ',' << format_number(zero_set_measure(antennas[t])) << '\n';
    }
    return os.str();
}

// ---- driver -------------------------------------------------------------------------

inline void write_output(const std::string& path, const std::string& content, std::ostream& fallback)
{
    if (path.empty() || path == "-") {
        fallback << content;
        fallback.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << content;
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

inline Format parse_format(std::string_view f)
{
    if (f == "csv") return Format::csv;
    if (f == "json") return Format::json;
    if (f == "bin") return Format::bin;
    throw UsageError("unknown format '" + std::string(f) + "'");
}

/// Values from a JSON config file override the corresponding flags.
inline void apply_config_file(RunConfig& cfg, const std::string& file)
{
    const auto j = json::parse(read_file(file), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw UsageError("config '" + file + "' is not a JSON object");
    auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (const auto& [key, v] : j.items()) {
        if (key == "model") cfg.model = text(v);
        else if (key == "snr") cfg.snr = text(v);
        else if (key == "upsilon") cfg.upsilon = text(v);
        else if (key == "n") cfg.n = text(v);
        else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
        else if (key == "out") cfg.out = text(v);
        else if (key == "table-out") cfg.table_out = text(v);
        else if (key == "format") cfg.format = parse_format(text(v));
        else if (key == "spectra") cfg.spectra = text(v);
        else if (key == "harmonics") cfg.harmonics = v.get<std::size_t>();
        else if (key == "lags") cfg.lags = v.get<std::size_t>();
        else throw UsageError("config '" + file + "': unknown key '" + key + "'");
    }
}

/// Runs one configured command, mapping failures onto the exit-code scheme.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        if (cfg.command == "spectrum") write_output(cfg.out, cmd_spectrum(cfg), out);
        else if (cfg.command == "bound-sweep") write_output(cfg.out, cmd_bound_sweep(cfg), out);
        else if (cfg.command == "prelog-report") write_output(cfg.out, cmd_prelog_report(cfg), out);
        else if (cfg.command == "szego") write_output(cfg.out, cmd_szego(cfg), out);
        else if (cfg.command == "miso") write_output(cfg.out, cmd_miso(cfg), out);
        else if (cfg.command == "simulate") {
            const auto res = cmd_simulate(cfg);
            write_output(cfg.out, res.path, out);
            std::string table_path = cfg.table_out;
            if (table_path.empty() && !cfg.out.empty() && cfg.out != "-")
                table_path = cfg.out + ".autocov.csv";
            if (!table_path.empty()) write_output(table_path, res.table, out);
        } else {
            throw UsageError("unknown command '" + cfg.command + "'");
        }
        return ExitCode::ok;
    } catch (const IoError& e) {
        err << "prelog_lab: " << e.what() << '\n';
        return ExitCode::io;
    } catch (const InternalError& e) {
        err << "prelog_lab: numeric failure: " << e.what() << '\n';
        return ExitCode::numeric;
    } catch (const UsageError& e) {
        err << "prelog_lab: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const DomainError& e) {
        err << "prelog_lab: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const ValidationError& e) {
        err << "prelog_lab: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const PreconditionError& e) {
        err << "prelog_lab: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const std::exception& e) {
        err << "prelog_lab: numeric failure: " << e.what() << '\n';
        return ExitCode::numeric;
    }
}

/// troff manual page generated from the option tables.
inline std::string manual_page(const CLI::App& app)
{
    std::ostringstream os;
    os << ".TH PRELOG_LAB 1\n.SH NAME\nprelog_lab \\- " << app.get_description() << "\n"
       << ".SH SYNOPSIS\n.B prelog_lab\n\\fICOMMAND\\fR [\\fIOPTIONS\\fR]\n.SH COMMANDS\n";
    for (const auto* sub : app.get_subcommands({})) {
        os << ".SS " << sub->get_name() << "\n" << sub->get_description() << "\n";
        for (const auto* opt : sub->get_options()) {
            if (opt->get_name() == "--help") continue;
            os << ".TP\n.B " << opt->get_name() << "\n" << opt->get_description();
            if (!opt->get_default_str().empty()) os << " (default: " << opt->get_default_str() << ")";
            os << "\n";
        }
    }
    os << ".SH ENVIRONMENT\n.TP\n.B PRELOG_LAB_THREADS\nMaximum number of worker threads.\n"
       << ".SH EXIT STATUS\n0 success, 2 usage error, 3 I/O error, 4 numeric failure.\n";
    return os.str();
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout,
                std::ostream& err = std::cerr)
{
    CLI::App app{"capacity pre-log bounds for noncoherent fading channels with memory"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format = "csv";
    std::string config_file;

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"spectrum", "zero-set measure, limiting ratio and autocovariance of a model spectrum"},
        {"bound-sweep", "capacity lower bound and coherent upper bound over an SNR grid"},
        {"prelog-report", "finite-SNR pre-log ratios with analytic limits"},
        {"szego", "Toeplitz log-det rate against the spectral log-integral"},
        {"simulate", "sample path of a fading model with autocovariance table"},
        {"miso", "MISO pre-log lower bound from per-antenna spectra"},
    };
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--model", cfg.model, "fading model name[:key=value,...]")->capture_default_str();
        sub->add_option("--snr", cfg.snr, "SNR grid lo:hi:points (log-spaced) or a,b,c");
        sub->add_option("--upsilon", cfg.upsilon, "Upsilon grid lo:hi:points or list")->capture_default_str();
        sub->add_option("--n", cfg.n, "dimensions (szego) or path length (simulate)");
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
        sub->add_option("--out", cfg.out, "output file (default stdout)");
        sub->add_option("--table-out", cfg.table_out, "simulate: autocovariance table file");
        sub->add_option("--format", format, "csv, json, or bin (simulate only)")->capture_default_str();
        sub->add_option("--spectra", cfg.spectra, "miso: comma list of W=<half-width> or JSON files");
        sub->add_option("--harmonics", cfg.harmonics, "harmonics for Gaussian synthesis")->capture_default_str();
        sub->add_option("--lags", cfg.lags, "autocovariance lags to report")->capture_default_str();
        sub->add_option("--config", config_file, "JSON config file overriding flags");
    }
    app.add_subcommand("manpage", "print the manual page");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? ExitCode::ok : ExitCode::usage;
    }

    const auto* chosen = app.get_subcommands().front();
    if (chosen->get_name() == "manpage") {
        out << manual_page(app);
        return ExitCode::ok;
    }
    cfg.command = chosen->get_name();
    try {
        cfg.format = parse_format(format);
        if (!config_file.empty()) apply_config_file(cfg, config_file);
    } catch (const IoError& e) {
        err << "prelog_lab: " << e.what() << '\n';
        return ExitCode::io;
    } catch (const std::exception& e) {
        err << "prelog_lab: " << e.what() << '\n';
        return ExitCode::usage;
    }
    return run(cfg, out, err);
}

} // namespace prelog::cli

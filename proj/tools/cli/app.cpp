#include "app.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "discrepancy.hpp"
#include "fanocav/detail/parallel.hpp"
#include "fanocav/errors.hpp"
#include "fanocav/fano.hpp"
#include "fanocav/io.hpp"
#include "fanocav/langevin.hpp"
#include "fanocav/presets.hpp"
#include "fanocav/sweep.hpp"
#include "fanocav/version.hpp"

namespace fanocav::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

RunSettings load_settings(const Sources& src) {
    Config c;
    if (!src.preset.empty()) c = preset_config(src.preset);
    if (!src.config_path.empty()) {
        const Config file = Config::from_file(src.config_path);
        for (const auto& [k, v] : file.entries()) c.set(k, v);
    }
    if (src.mode) c.set("mode.response", *src.mode);
    if (src.drop_counter_sideband) c.set("mode.counter_sideband", "false");
    for (const auto& o : src.overrides) c.apply_override(o);
    return c.build();
}

std::vector<Curve> compute_curves(const RunSettings& s) {
    const std::vector<double> grid = s.delta_grid();
    std::vector<std::optional<double>> values;
    if (s.family) {
        if (s.family->parameter == "delta") throw ConfigError("family.parameter cannot be the probe detuning");
        for (double v : s.family->values) values.emplace_back(v);
    } else {
        values.emplace_back(std::nullopt);
    }

    std::vector<Curve> curves;
    for (const auto& v : values) {
        Curve c;
        c.value = v;
        SystemParams sp = s.params;
        double probe = s.probe_delta;
        std::optional<double> Omega_l, eps_p;
        if (v) {
            apply_parameter(sp, s.family->parameter, *v, probe, Omega_l, eps_p);
            c.label = fmt::format("{}={}", s.family->parameter, *v);
        } else {
            c.label = "spectrum";
        }
        c.params = normalize(sp);
        if (Omega_l) c.params.Omega_l = *Omega_l;
        if (eps_p) c.params.eps_p = *eps_p;
        c.stability = stability_check(c.params);
        if (!c.stability.stable && s.stability == StabilityPolicy::gap)
            throw InstabilityError(fmt::format(
                "{}: linearized dynamics are unstable (max Re lambda = {:.3g}); set mode.stability_policy=report "
                "to compute anyway",
                c.label, c.stability.max_real_part));
        c.spectrum = compute_spectrum(c.params, grid, s.response);
        curves.push_back(std::move(c));
    }
    return curves;
}

namespace {

struct Options {
    Sources src;
    std::string output_dir;
    std::string name;
    bool force = false;
};

void add_common(CLI::App* sub, Options& o, bool with_preset = true) {
    if (with_preset) sub->add_option("--preset", o.src.preset, "named parameter set (see `preset --list`)");
    sub->add_option("--config", o.src.config_path, "INI or JSON configuration file");
    sub->add_option("--set", o.src.overrides, "override, section.key=value (repeatable, last wins)");
    sub->add_option("--mode", o.src.mode, "response mode")->check(CLI::IsMember({"solver", "printed"}));
    sub->add_flag("--drop-counter-sideband", o.src.drop_counter_sideband, "solve without the counter sideband");
    sub->add_option("--output-dir", o.output_dir, "output directory (default $FANOCAV_OUTPUT_DIR or .)");
    sub->add_option("--name", o.name, "output file stem");
    sub->add_flag("--force", o.force, "overwrite existing outputs");
}

fs::path output_dir(const Options& o) {
    if (!o.output_dir.empty()) return o.output_dir;
    if (const char* env = std::getenv("FANOCAV_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

std::string stem(const Options& o, const RunSettings& s, const char* fallback) {
    if (!o.name.empty()) return o.name;
    if (!s.preset.empty()) return s.preset;
    if (!o.src.config_path.empty()) return fs::path(o.src.config_path).stem().string();
    return fallback;
}

Provenance make_provenance(const std::string& command, const RunSettings& s) {
    Provenance p;
    p.command = command;
    p.settings = s;
    if (!s.preset.empty()) {
        for (const auto& pr : presets())
            if (pr.name == s.preset) p.preset_definition = pr.definition;
        p.preset = s.preset;
    }
    return p;
}

void report_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) fmt::print(err, "warning: {}\n", w);
}

ordered_json landmarks_json(const Landmarks& l) {
    return {{"delta_at_min", l.delta_at_min}, {"mu_min", l.mu_min}, {"delta_at_max", l.delta_at_max},
            {"mu_max", l.mu_max}};
}

struct ValidCurve {
    std::vector<double> delta;
    std::vector<double> mu;
};

ValidCurve valid_points(const Spectrum& s) {
    ValidCurve v;
    for (std::size_t i = 0; i < s.delta.size(); ++i) {
        if (!s.points[i]) continue;
        v.delta.push_back(s.delta[i]);
        v.mu.push_back(s.points[i]->mu);
    }
    return v;
}

void require_kind(const RunSettings& s, std::initializer_list<const char*> allowed, const char* command) {
    if (s.kind.empty()) return;
    for (const char* k : allowed)
        if (s.kind == k) return;
    const char* hint = s.kind == "map" ? "sweep" : s.kind == "delay" ? "delay" : "spectrum";
    throw ConfigError(fmt::format("{} is a {} preset; run `fanocav {} --preset {}` instead of {}", s.preset, s.kind,
                                  hint, s.preset, command));
}

int cmd_spectrum(const Options& o, std::ostream& out, std::ostream& err) {
    const RunSettings s = load_settings(o.src);
    require_kind(s, {"spectra"}, "spectrum");
    const auto curves = compute_curves(s);

    std::vector<Spectrum> spectra;
    ordered_json info = ordered_json::array();
    std::vector<std::string> warnings;
    std::size_t row = 0;
    ResponseOptions other = s.response;
    other.mode = s.response.mode == ResponseMode::solver ? ResponseMode::printed : ResponseMode::solver;
    const auto grid = s.delta_grid();
    for (const auto& c : curves) {
        spectra.push_back(c.spectrum);
        ordered_json j;
        j["label"] = c.label;
        if (c.value) {
            j["parameter"] = s.family->parameter;
            j["value"] = *c.value;
        }
        j["first_row"] = row;
        j["rows"] = c.spectrum.delta.size();
        j["gaps"] = c.spectrum.gaps;
        j["stable"] = c.stability.stable;
        j["max_real_eigenvalue"] = c.stability.max_real_part;
        const ValidCurve v = valid_points(c.spectrum);
        if (v.delta.size() >= 3) j["landmarks"] = landmarks_json(locate_landmarks(v.delta, v.mu));
        const DiscrepancyReport d = discrepancy_report(c.params, grid, s.response, other);
        j["discrepancy"] = {{"reference", to_string(s.response.mode)},
                            {"other", to_string(other.mode)},
                            {"max_relative", d.max_relative},
                            {"median_relative", d.median_relative},
                            {"delta_at_max", d.delta_at_max},
                            {"compared", d.compared},
                            {"excluded", d.excluded}};
        info.push_back(j);
        row += c.spectrum.delta.size();
        for (const auto& w : c.params.warnings)
            if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
        if (!c.stability.stable) warnings.push_back(fmt::format("{}: unstable parameter set (reported)", c.label));
    }

    const fs::path dir = output_dir(o);
    const std::string name = stem(o, s, "spectrum");
    Provenance prov = make_provenance("spectrum", s);
    prov.warnings = warnings;
    prov.extra_json = ordered_json{{"csv", name + ".csv"}, {"curves", info}}.dump();
    const fs::path csv = dir / (name + ".csv");
    const fs::path json = dir / (name + ".json");
    if (!o.force)
        for (const auto& p : {csv, json})
            if (fs::exists(p)) throw ConfigError(fmt::format("refusing to overwrite '{}' (use --force)", p.string()));
    write_text_file(csv, spectrum_csv(spectra), o.force);
    write_text_file(json, provenance_json(prov), o.force);
    report_warnings(err, warnings);
    fmt::print(out, "wrote {} ({} rows, {} curve{})\n", csv.string(), row, curves.size(),
               curves.size() == 1 ? "" : "s");
    fmt::print(out, "wrote {}\n", json.string());
    return ExitCode::ok;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
    const RunSettings s = load_settings(o.src);
    require_kind(s, {"map"}, "sweep");
    if (!s.axis1) throw ConfigError("no sweep axis: set sweep.axis1 (e.g. --set \"sweep.axis1=delta 0.5 1.5 201\")");

    SweepSpec spec;
    spec.name = s.preset.empty() ? "custom" : s.preset;
    spec.base = s.params;
    spec.axis1 = *s.axis1;
    spec.axis2 = s.axis2;
    spec.observable = s.observable;
    spec.response = s.response;
    spec.stability = s.stability;
    spec.probe_delta = s.probe_delta;
    spec.threads = s.threads;
    const SweepResult r = run_sweep(spec);

    ordered_json mask = ordered_json::array();
    for (std::size_t row = 0; row < r.rows(); ++row) {
        ordered_json line = ordered_json::array();
        for (std::size_t col = 0; col < r.cols(); ++col) line.push_back(r.stable[row * r.cols() + col] ? 1 : 0);
        mask.push_back(line);
    }
    ordered_json extra{{"observable", to_string(s.observable)},
                       {"units", s.observable == Observable::tau_g ? "us" : s.observable == Observable::phase ? "rad" : "1"},
                       {"axis1", format_axis(*s.axis1)},
                       {"axis2", s.axis2 ? format_axis(*s.axis2) : ""},
                       {"stability_policy", to_string(s.stability)},
                       {"unstable_points", r.unstable},
                       {"gap_points", r.gaps},
                       {"stability_mask", mask}};

    const fs::path dir = output_dir(o);
    const std::string name = stem(o, s, "sweep");
    Provenance prov = make_provenance("sweep", s);
    prov.warnings = r.warnings;
    prov.extra_json = extra.dump();
    const fs::path csv = dir / (name + ".csv");
    const fs::path json = dir / (name + ".json");
    if (!o.force)
        for (const auto& p : {csv, json})
            if (fs::exists(p)) throw ConfigError(fmt::format("refusing to overwrite '{}' (use --force)", p.string()));
    write_text_file(csv, grid_csv(r), o.force);
    write_text_file(json, provenance_json(prov), o.force);
    report_warnings(err, r.warnings);
    if (r.unstable) fmt::print(err, "note: {} of {} grid points are unstable\n", r.unstable, r.values.size());
    fmt::print(out, "wrote {} ({} x {}, {} gaps)\n", csv.string(), r.rows(), r.cols(), r.gaps);
    fmt::print(out, "wrote {}\n", json.string());
    return ExitCode::ok;
}

int cmd_delay(const Options& o, std::ostream& out, std::ostream& err) {
    const RunSettings s = load_settings(o.src);
    require_kind(s, {"delay"}, "delay");
    if (!s.pump_axis) throw ConfigError("no pump-power axis: set delay.axis (e.g. \"P_l 1e-4 1e-2 41 log\")");
    s.pump_axis->validate();
    const auto powers = s.pump_axis->values();
    const auto rows = delay_curve(s.params, powers, s.probe_delta, s.response);

    ordered_json table = ordered_json::array();
    std::size_t unstable = 0;
    for (const auto& r : rows) {
        table.push_back({{"P_l", r.P_l}, {"tau_g_us", r.tau_g * 1e6}, {"g", r.g}, {"stable", r.stable}});
        if (!r.stable) ++unstable;
    }
    const fs::path dir = output_dir(o);
    const std::string name = stem(o, s, "delay");
    Provenance prov = make_provenance("delay", s);
    prov.warnings = normalize(s.params).warnings;
    prov.extra_json = ordered_json{{"probe_delta", s.probe_delta}, {"unstable_points", unstable}, {"rows", table}}.dump();
    const fs::path csv = dir / (name + ".csv");
    const fs::path json = dir / (name + ".json");
    if (!o.force)
        for (const auto& p : {csv, json})
            if (fs::exists(p)) throw ConfigError(fmt::format("refusing to overwrite '{}' (use --force)", p.string()));
    write_text_file(csv, delay_csv(rows), o.force);
    write_text_file(json, provenance_json(prov), o.force);
    report_warnings(err, prov.warnings);
    if (unstable) fmt::print(err, "note: {} of {} pump powers give unstable dynamics\n", unstable, rows.size());
    fmt::print(out, "wrote {} ({} rows)\n", csv.string(), rows.size());
    fmt::print(out, "wrote {}\n", json.string());
    return ExitCode::ok;
}

int cmd_fit(const Options& o, std::ostream& out, std::ostream& err) {
    const RunSettings s = load_settings(o.src);
    require_kind(s, {"spectra"}, "fit-fano");
    const auto curves = compute_curves(s);
    ordered_json fits = ordered_json::array();
    for (const auto& c : curves) {
        const ValidCurve v = valid_points(c.spectrum);
        const FanoShape shape = fano_params_from_system(c.params);
        const double q_hint = shape.q != 0.0 ? shape.q : 1.0;
        const FanoFit f = fit_fano(v.delta, v.mu, guess_from_landmarks(v.delta, v.mu, q_hint));
        fits.push_back({{"label", c.label},
                        {"q_fit", f.q_fit},
                        {"Gamma_fit", f.Gamma_fit},
                        {"delta0", f.delta0},
                        {"amplitude", f.amplitude},
                        {"rms_residual", f.rms_residual},
                        {"converged", f.converged},
                        {"q_system", shape.q},
                        {"Gamma_system", shape.Gamma}});
        fmt::print(out, "{}: q_fit={:.6g} Gamma_fit={:.6g} delta0={:.6g} A={:.6g} rms={:.3g}{}\n", c.label, f.q_fit,
                   f.Gamma_fit, f.delta0, f.amplitude, f.rms_residual, f.converged ? "" : " (not converged)");
    }
    const fs::path dir = output_dir(o);
    const std::string name = stem(o, s, "spectrum") + "_fano";
    Provenance prov = make_provenance("fit-fano", s);
    prov.extra_json = ordered_json{{"fits", fits}}.dump();
    const fs::path json = dir / (name + ".json");
    write_text_file(json, provenance_json(prov), o.force);
    (void)err;
    fmt::print(out, "wrote {}\n", json.string());
    return ExitCode::ok;
}

struct OracleOptions {
    int n = 20;
    std::uint64_t seed = 7;
    std::string dump;
    bool force = false;
};

int cmd_oracle(const OracleOptions& o, std::ostream& out, std::ostream& err) {
    if (o.n < 1) throw ConfigError("--n must be >= 1");
    const auto cases = draw_stable_cases(o.n, o.seed);
    std::vector<OracleComparison> results(cases.size());
    parallel_for(cases.size(), 0, [&](std::size_t i) { results[i] = compare_with_solver(cases[i].params, cases[i].delta); });

    double worst = 0.0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& p = cases[i].params;
        fmt::print(out,
                   "case {:2d}: kappa={:.4f} g={:.4f} Delta={:.4f} delta={:.4f} gamma_b={:.2e} U_eff={:.3f} nu={:.2f}"
                   "  rel_err={:.3e}\n",
                   i + 1, p.kappa, p.g, p.Delta, cases[i].delta, p.gamma_b, p.U_eff, p.nu, results[i].relative_error);
        worst = std::max(worst, results[i].relative_error);
    }
    if (!o.dump.empty()) {
        const auto& c = cases.front();
        write_text_file(o.dump, trajectory_csv(integrate(c.params, c.delta, default_config(c.params, c.delta))),
                        o.force);
        fmt::print(out, "wrote {}\n", o.dump);
    }
    const bool pass = worst < 0.01;
    fmt::print(out, "max relative error {:.3e} over {} stable sets (seed {}), tolerance 1e-2: {}\n", worst,
               cases.size(), o.seed, pass ? "PASS" : "FAIL");
    if (!pass) fmt::print(err, "error: oracle disagreement exceeds 1%\n");
    return pass ? ExitCode::ok : ExitCode::numerical_failure;
}

int cmd_preset_list(std::ostream& out) {
    for (const auto& p : presets()) {
        const auto j = ordered_json::parse(p.definition);
        fmt::print(out, "{:<6} {:<8} {}\n", p.name, p.kind, j["preset"].value("description", ""));
    }
    return ExitCode::ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probe response of a BEC-loaded optomechanical cavity", "fanocav"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Options spectrum_o, sweep_o, delay_o, fit_o, preset_o;
    OracleOptions oracle_o;
    std::string preset_name;
    bool preset_list = false, preset_show = false;

    auto* spectrum = app.add_subcommand("spectrum", "probe spectra over the delta grid (8-column CSV)");
    add_common(spectrum, spectrum_o);
    auto* sweep = app.add_subcommand("sweep", "1D or 2D parameter sweep of one observable (grid CSV)");
    add_common(sweep, sweep_o);
    auto* delay = app.add_subcommand("delay", "group delay versus pump power");
    add_common(delay, delay_o);
    auto* fit = app.add_subcommand("fit-fano", "fit the Fano form to absorption spectra");
    add_common(fit, fit_o);
    auto* oracle = app.add_subcommand("oracle-check", "compare the sideband solver with time integration");
    oracle->add_option("--n", oracle_o.n, "number of random stable parameter sets");
    oracle->add_option("--seed", oracle_o.seed, "random seed");
    oracle->add_option("--dump-trajectory", oracle_o.dump, "write the first trajectory as CSV");
    oracle->add_flag("--force", oracle_o.force, "overwrite the trajectory file");
    auto* preset = app.add_subcommand("preset", "list, show or run a named preset");
    preset->add_option("preset", preset_name, "preset name");
    preset->add_flag("--list", preset_list, "list presets");
    preset->add_flag("--show", preset_show, "print the preset definition");
    add_common(preset, preset_o, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::config_error;
    }

    try {
        if (*spectrum) return cmd_spectrum(spectrum_o, out, err);
        if (*sweep) return cmd_sweep(sweep_o, out, err);
        if (*delay) return cmd_delay(delay_o, out, err);
        if (*fit) return cmd_fit(fit_o, out, err);
        if (*oracle) return cmd_oracle(oracle_o, out, err);
        if (*preset) {
            if (preset_list) return cmd_preset_list(out);
            if (preset_name.empty()) throw ConfigError("give a preset name or --list");
            const Preset& p = find_preset(preset_name);
            if (preset_show) {
                fmt::print(out, "{}\n", p.definition);
                return ExitCode::ok;
            }
            preset_o.src.preset = p.name;
            if (p.kind == "map") return cmd_sweep(preset_o, out, err);
            if (p.kind == "delay") return cmd_delay(preset_o, out, err);
            return cmd_spectrum(preset_o, out, err);
        }
    } catch (const Error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return e.kind() == Error::Kind::config ? ExitCode::config_error : ExitCode::numerical_failure;
    } catch (const std::exception& e) {
        fmt::print(err, "internal error: {}\n", e.what());
        return ExitCode::internal;
    }
    return ExitCode::config_error;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace fanocav::cli

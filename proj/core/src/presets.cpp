#include "fanocav/presets.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "fanocav/errors.hpp"

namespace fanocav {

namespace {

// Common rates: kappa = 0.1 omega_b, U_eff = omega_b, nu/2pi = 1 MHz,
// gamma_b/2pi = 7.5 mHz, omega_b/2pi = 10 kHz. Most of these parameter sets are
// mostly unstable, so the spectra and maps report stability instead of gapping.

const char* const kFig2a = R"json({
  "preset": {"name": "fig2a", "kind": "spectra",
             "description": "absorption for Delta/omega_b = 0.7 ... 1.2 at g = 0.1 omega_b"},
  "cavity": {"kappa_wb": 0.1},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6, "g_wb": 0.1},
  "mode": {"stability_policy": "report"},
  "grid": {"delta_min": 0.5, "delta_max": 1.5, "points": 2001},
  "family": {"parameter": "Delta", "values": [0.7, 0.8, 0.9, 1.0, 1.1, 1.2]}
})json";

const char* const kFig2b = R"json({
  "preset": {"name": "fig2b", "kind": "spectra",
             "description": "absorption for Delta/omega_b = 0.7 ... 1.2 at g = omega_b"},
  "cavity": {"kappa_wb": 0.1},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6, "g_wb": 1},
  "mode": {"stability_policy": "report"},
  "grid": {"delta_min": 0.5, "delta_max": 1.5, "points": 2001},
  "family": {"parameter": "Delta", "values": [0.7, 0.8, 0.9, 1.0, 1.1, 1.2]}
})json";

const char* const kFig3a = R"json({
  "preset": {"name": "fig3a", "kind": "spectra",
             "description": "absorption at Delta = 0.8 omega_b for g/omega_b = 5, 20, 50"},
  "cavity": {"kappa_wb": 0.1, "detuning_ratio": 0.8},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6},
  "mode": {"stability_policy": "report"},
  "grid": {"delta_min": 0.5, "delta_max": 1.5, "points": 2001},
  "family": {"parameter": "g", "values": [5, 20, 50]}
})json";

const char* const kFig3b = R"json({
  "preset": {"name": "fig3b", "kind": "spectra",
             "description": "absorption at Delta = 0.8 omega_b for U_eff/omega_b = 1, 50, 100"},
  "cavity": {"kappa_wb": 0.1, "detuning_ratio": 0.8},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "nu_hz": 1e6, "g_wb": 0.01},
  "mode": {"stability_policy": "report"},
  "grid": {"delta_min": 0.5, "delta_max": 1.5, "points": 2001},
  "family": {"parameter": "U_eff", "values": [1, 50, 100]}
})json";

const char* const kFig4a = R"json({
  "preset": {"name": "fig4a", "kind": "map",
             "description": "absorption over (delta, Delta) for Delta/omega_b in [0.5, 1]"},
  "cavity": {"kappa_wb": 0.1},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6, "g_wb": 0.1},
  "mode": {"stability_policy": "report"},
  "sweep": {"axis1": "delta 0.5 1.5 201 linear", "axis2": "Delta 0.5 1 201 linear", "observable": "mu"}
})json";

const char* const kFig4b = R"json({
  "preset": {"name": "fig4b", "kind": "map",
             "description": "absorption over (delta, Delta) for Delta/omega_b in [1, 1.5]"},
  "cavity": {"kappa_wb": 0.1},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6, "g_wb": 0.1},
  "mode": {"stability_policy": "report"},
  "sweep": {"axis1": "delta 0.5 1.5 201 linear", "axis2": "Delta 1 1.5 201 linear", "observable": "mu"}
})json";

const char* const kFig4c = R"json({
  "preset": {"name": "fig4c", "kind": "map",
             "description": "absorption over (delta, Delta) for Delta/omega_b in [0.5, 1.5]"},
  "cavity": {"kappa_wb": 0.1},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6, "g_wb": 0.1},
  "mode": {"stability_policy": "report"},
  "sweep": {"axis1": "delta 0.5 1.5 201 linear", "axis2": "Delta 0.5 1.5 201 linear", "observable": "mu"}
})json";

const char* const kFig5a = R"json({
  "preset": {"name": "fig5a", "kind": "spectra",
             "description": "absorption at Delta = 0.8 omega_b for kappa/omega_b = 0.05, 0.1, 0.2"},
  "cavity": {"kappa_wb": 0.1, "detuning_ratio": 0.8},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6, "g_wb": 0.01},
  "mode": {"stability_policy": "report"},
  "grid": {"delta_min": 0.5, "delta_max": 1.5, "points": 2001},
  "family": {"parameter": "kappa", "values": [0.05, 0.1, 0.2]}
})json";

const char* const kFig5b = R"json({
  "preset": {"name": "fig5b", "kind": "spectra",
             "description": "absorption at Delta = 0.8 omega_b for gamma_b = 1, 10, 100, 1000 x 7.5e-7 omega_b"},
  "cavity": {"kappa_wb": 0.1, "detuning_ratio": 0.8},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6, "g_wb": 0.01},
  "mode": {"stability_policy": "report"},
  "grid": {"delta_min": 0.5, "delta_max": 1.5, "points": 2001},
  "family": {"parameter": "gamma_b", "values": [7.5e-7, 7.5e-6, 7.5e-5, 7.5e-4]}
})json";

const char* const kFig6 = R"json({
  "preset": {"name": "fig6", "kind": "spectra",
             "description": "probe transmission at Delta = omega_b for g/omega_b = 0 ... 4"},
  "cavity": {"kappa_wb": 0.1, "detuning_ratio": 1},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6},
  "mode": {"stability_policy": "report"},
  "grid": {"delta_min": 0.5, "delta_max": 1.5, "points": 2001},
  "family": {"parameter": "g", "values": [0, 1, 2, 3, 4]}
})json";

const char* const kFig7 = R"json({
  "preset": {"name": "fig7", "kind": "spectra",
             "description": "probe phase at Delta = omega_b for g/omega_b = 0 ... 4"},
  "cavity": {"kappa_wb": 0.1, "detuning_ratio": 1},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6},
  "mode": {"stability_policy": "report"},
  "grid": {"delta_min": 0.5, "delta_max": 1.5, "points": 2001},
  "family": {"parameter": "g", "values": [0, 1, 2, 3, 4]}
})json";

// Pump-dependent presets: g = coupling_per_photon |c_s|^2, calibrated so that
// g = 0.1 omega_b at P_l = 1 mW.

const char* const kFig8 = R"json({
  "preset": {"name": "fig8", "kind": "delay",
             "description": "group delay at delta = omega_b versus pump power, Delta = omega_b"},
  "cavity": {"kappa_wb": 0.1, "detuning_ratio": 1},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6},
  "drive": {"omega_l_hz": 3.8e14, "calibrate_g_wb": 0.1, "calibrate_P_l": 1e-3},
  "grid": {"probe_delta": 1},
  "delay": {"axis": "P_l 1e-4 1e-2 41 log"}
})json";

const char* const kFig9 = R"json({
  "preset": {"name": "fig9", "kind": "map",
             "description": "group delay over pump power and mechanical damping (up to 2 pi x 4.1 kHz)"},
  "cavity": {"kappa_wb": 0.1, "detuning_ratio": 1},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6},
  "drive": {"omega_l_hz": 3.8e14, "calibrate_g_wb": 0.1, "calibrate_P_l": 1e-3},
  "mode": {"stability_policy": "report"},
  "grid": {"probe_delta": 1},
  "sweep": {"axis1": "P_l 1e-4 1e-2 201 log", "axis2": "damping_override 7.5e-7 0.41 201 log",
            "observable": "tau_g"}
})json";

const char* const kFig10 = R"json({
  "preset": {"name": "fig10", "kind": "map",
             "description": "group delay over pump power and U_eff, omega_b derived from nu and U_eff, g = 0.1 derived omega_b at 1 mW"},
  "cavity": {"kappa_hz": 1e3, "detuning_ratio": 1},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6},
  "drive": {"omega_l_hz": 3.8e14, "calibrate_g_hz": 1.01995e5, "calibrate_P_l": 1e-3},
  "mode": {"omega_b_source": "derived", "stability_policy": "report"},
  "grid": {"probe_delta": 1},
  "sweep": {"axis1": "P_l 1e-4 1e-2 201 log", "axis2": "U_eff 1 100 201 linear", "observable": "tau_g"}
})json";

const char* const kFig11 = R"json({
  "preset": {"name": "fig11", "kind": "map",
             "description": "group delay over pump power and Delta/omega_b in [0.3, 1.7]"},
  "cavity": {"kappa_wb": 0.1, "detuning_ratio": 1},
  "condensate": {"omega_b_hz": 1e4, "gamma_b_hz": 7.5e-3, "U_eff_wb": 1, "nu_hz": 1e6},
  "drive": {"omega_l_hz": 3.8e14, "calibrate_g_wb": 0.1, "calibrate_P_l": 1e-3},
  "mode": {"stability_policy": "report"},
  "grid": {"probe_delta": 1},
  "sweep": {"axis1": "P_l 1e-4 1e-2 201 log", "axis2": "Delta 0.3 1.7 201 linear", "observable": "tau_g"}
})json";

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all{
        {"fig2a", "spectra", kFig2a}, {"fig2b", "spectra", kFig2b}, {"fig3a", "spectra", kFig3a},
        {"fig3b", "spectra", kFig3b}, {"fig4a", "map", kFig4a},     {"fig4b", "map", kFig4b},
        {"fig4c", "map", kFig4c},     {"fig5a", "spectra", kFig5a}, {"fig5b", "spectra", kFig5b},
        {"fig6", "spectra", kFig6},   {"fig7", "spectra", kFig7},   {"fig8", "delay", kFig8},
        {"fig9", "map", kFig9},       {"fig10", "map", kFig10},     {"fig11", "map", kFig11},
    };
    return all;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& p : presets()) names.push_back(p.name);
    return names;
}

const Preset& find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw ConfigError(fmt::format("unknown preset '{}' (valid: {})", name, fmt::join(preset_names(), ", ")));
}

Config preset_config(const std::string& name) { return Config::from_json_text(find_preset(name).definition); }

}  // namespace fanocav

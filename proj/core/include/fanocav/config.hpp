#pragma once

// Sectioned key-value run configuration, read from INI or JSON.
//
// Rates accept three spellings: plain (rad/s), "_hz" (multiplied by 2 pi) and
// "_wb" (multiplied by the reference omega_b of [condensate]). Powers are in W,
// energies in J.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fanocav/model.hpp"
#include "fanocav/response.hpp"
#include "fanocav/sweep.hpp"

namespace fanocav {

struct Family {
    std::string parameter;
    std::vector<double> values;
};

struct RunSettings {
    std::string preset;
    std::string kind;  // spectra, map, delay, or empty for plain configs
    std::string description;

    SystemParams params;
    ResponseOptions response;
    StabilityPolicy stability = StabilityPolicy::gap;
    unsigned threads = 0;

    double delta_min = 0.5;  // probe detuning grid, units of omega_b
    double delta_max = 1.5;
    std::size_t points = 2001;
    double probe_delta = 1.0;

    std::optional<Family> family;
    std::optional<Axis> axis1;
    std::optional<Axis> axis2;
    Observable observable = Observable::mu;
    std::optional<Axis> pump_axis;

    [[nodiscard]] std::vector<double> delta_grid() const { return linspace(delta_min, delta_max, points); }
};

class Config {
public:
    static Config from_ini_file(const std::filesystem::path& path);
    static Config from_ini_text(const std::string& text);
    static Config from_json_file(const std::filesystem::path& path);
    static Config from_json_text(const std::string& text);
    /// Picks the parser from the extension (.json or anything else as INI).
    static Config from_file(const std::filesystem::path& path);

    /// "section.key" or a bare key that belongs to exactly one section. Setting
    /// one spelling of a rate removes the others.
    void set(const std::string& key, const std::string& value);

    /// "key=value", applied in order, so the last duplicate wins.
    void apply_override(const std::string& assignment);

    [[nodiscard]] RunSettings build() const;

    [[nodiscard]] const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

/// Every accepted "section.key" (rate keys listed without suffix).
std::vector<std::string> config_keys();

/// Sectioned JSON with every value explicit in rad/s, W and J. Loading it back
/// with Config::from_json_text reproduces `s` exactly.
std::string resolved_config_json(const RunSettings& s);

std::string format_axis(const Axis& a);
Axis parse_axis(const std::string& text);

}  // namespace fanocav

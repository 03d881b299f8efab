#pragma once

#include <string>
#include <vector>

#include "fanocav/config.hpp"

namespace fanocav {

struct Preset {
    std::string name;
    std::string kind;        // spectra, map or delay
    std::string definition;  // JSON configuration, kept verbatim for provenance
};

const std::vector<Preset>& presets();
std::vector<std::string> preset_names();

/// Throws ConfigError listing the valid names.
const Preset& find_preset(const std::string& name);

Config preset_config(const std::string& name);

}  // namespace fanocav

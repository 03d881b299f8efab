#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fanocav/config.hpp"
#include "fanocav/response.hpp"

namespace fanocav::cli {

enum ExitCode : int { ok = 0, internal = 1, config_error = 2, numerical_failure = 3 };

struct Sources {
    std::string preset;
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::string> mode;
    bool drop_counter_sideband = false;
};

/// Preset definition, then the config file, then --mode / --drop-counter-sideband,
/// then every --set in order.
RunSettings load_settings(const Sources& src);

struct Curve {
    std::string label;
    std::optional<double> value;  // family value, absent for a single spectrum
    EffectiveParams params;
    StabilityReport stability;
    Spectrum spectrum;
};

/// One spectrum per family value (or a single one). Throws InstabilityError for
/// unstable parameters unless the stability policy is "report".
std::vector<Curve> compute_curves(const RunSettings& s);

/// Full command line, program name first.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace fanocav::cli

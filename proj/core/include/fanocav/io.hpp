#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fanocav/config.hpp"
#include "fanocav/langevin.hpp"
#include "fanocav/response.hpp"
#include "fanocav/sweep.hpp"

namespace fanocav {

inline constexpr std::array<std::string_view, 8> kSpectrumColumns{
    "delta_norm", "mu", "nu_out", "t_re", "t_im", "t_abs2", "phase_rad", "tau_g_us"};

inline constexpr std::array<std::string_view, 4> kDelayColumns{"P_l_W", "tau_g_us", "g_norm", "stable"};

/// Floating point text with 9 significant digits.
std::string format_value(double v);

/// One row per grid point; curves are concatenated in order. Gap rows keep
/// delta_norm and leave every other cell empty.
std::string spectrum_csv(const std::vector<Spectrum>& curves);

/// First row: empty corner then axis1 values. Each following row: axis2 value
/// then the observable along axis1. Gaps are empty cells.
std::string grid_csv(const SweepResult& r);

std::string delay_csv(const std::vector<DelayRow>& rows);

std::string trajectory_csv(const Trajectory& traj);

struct CsvCheck {
    std::size_t rows = 0;
    std::size_t columns = 0;
};

/// Throw InvalidInput describing the first violation.
CsvCheck validate_spectrum_csv(const std::string& text);
CsvCheck validate_grid_csv(const std::string& text);

struct Provenance {
    std::string command;
    std::string preset;             // empty for custom runs
    std::string preset_definition;  // verbatim
    RunSettings settings;
    std::vector<std::string> warnings;
    std::string extra_json = "{}";  // merged into the record under "results"
};

std::string provenance_json(const Provenance& p);

/// Writes atomically (temporary file then rename). Refuses to replace an
/// existing file unless `force`.
void write_text_file(const std::filesystem::path& path, const std::string& content, bool force);

}  // namespace fanocav

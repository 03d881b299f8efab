#include "fanocav/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>
#include <json.hpp>

#include "fanocav/errors.hpp"
#include "fanocav/version.hpp"

namespace fanocav {

std::string format_value(double v) { return fmt::format("{:.9g}", v); }

namespace {

void header(std::string& out, auto const& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parses_as_number(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

nlohmann::ordered_json params_json(const EffectiveParams& e) {
    nlohmann::ordered_json j;
    j["kappa"] = e.kappa;
    j["gamma_b"] = e.gamma_b;
    j["omega_b"] = e.omega_b;
    j["Delta"] = e.Delta;
    j["g"] = e.g;
    j["U_eff"] = e.U_eff;
    j["nu"] = e.nu;
    j["Omega_l"] = e.Omega_l;
    j["eps_p"] = e.eps_p;
    j["omega_b_si"] = e.omega_b_si;
    return j;
}

nlohmann::ordered_json params_json(const SystemParams& p) {
    nlohmann::ordered_json j;
    j["kappa"] = p.kappa;
    j["gamma_b"] = p.gamma_b;
    j["omega_b"] = p.omega_b;
    j["Delta"] = p.Delta;
    j["g"] = p.g;
    j["U_eff"] = p.U_eff;
    j["nu"] = p.nu;
    j["P_l"] = p.P_l;
    j["P_p"] = p.P_p;
    j["omega_l"] = p.omega_l;
    j["omega_p"] = p.omega_p;
    j["N"] = p.N;
    j["M"] = p.M;
    j["omega_b_source"] = to_string(p.omega_b_source);
    return j;
}

}  // namespace

std::string spectrum_csv(const std::vector<Spectrum>& curves) {
    std::string out;
    header(out, kSpectrumColumns);
    for (const auto& s : curves) {
        for (std::size_t i = 0; i < s.delta.size(); ++i) {
            const auto& pt = s.points[i];
            if (!pt) {
                // delta_bar = delta - omega_b with omega_b = 1
                out += format_value(s.delta[i] - 1.0);
                out += ",,,,,,,\n";
                continue;
            }
            out += fmt::format("{},{},{},{},{},{},{},{}\n", format_value(pt->delta_bar), format_value(pt->mu),
                               format_value(pt->nu_out), format_value(pt->t_p.real()),
                               format_value(pt->t_p.imag()), format_value(std::norm(pt->t_p)),
                               format_value(pt->phase), format_value(pt->tau_g * 1e6));
        }
    }
    return out;
}

std::string grid_csv(const SweepResult& r) {
    std::string out;
    for (double x : r.axis1) out += ',' + format_value(x);
    out += '\n';
    for (std::size_t row = 0; row < r.rows(); ++row) {
        out += r.axis2.empty() ? std::string() : format_value(r.axis2[row]);
        for (std::size_t col = 0; col < r.cols(); ++col) {
            out += ',';
            if (const auto& v = r.at(row, col)) out += format_value(*v);
        }
        out += '\n';
    }
    return out;
}

std::string delay_csv(const std::vector<DelayRow>& rows) {
    std::string out;
    header(out, kDelayColumns);
    for (const auto& r : rows)
        out += fmt::format("{},{},{},{}\n", format_value(r.P_l), format_value(r.tau_g * 1e6), format_value(r.g),
                           r.stable ? 1 : 0);
    return out;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,q,qdot,dc_re,dc_im\n";
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const State& s = traj.states[i];
        out += fmt::format("{},{},{},{},{}\n", format_value(traj.t[i]), format_value(s.q), format_value(s.qdot),
                           format_value(s.dc.real()), format_value(s.dc.imag()));
    }
    return out;
}

CsvCheck validate_spectrum_csv(const std::string& text) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw InvalidInput("spectrum CSV is empty");
    const auto head = split_csv_line(lines[0]);
    if (head.size() != kSpectrumColumns.size())
        throw InvalidInput(fmt::format("spectrum CSV header has {} columns, expected {}", head.size(),
                                       kSpectrumColumns.size()));
    for (std::size_t i = 0; i < head.size(); ++i)
        if (head[i] != kSpectrumColumns[i])
            throw InvalidInput(fmt::format("spectrum CSV column {} is '{}', expected '{}'", i + 1, head[i],
                                           kSpectrumColumns[i]));
    CsvCheck c{0, head.size()};
    for (std::size_t n = 1; n < lines.size(); ++n) {
        if (lines[n].empty()) continue;
        const auto cells = split_csv_line(lines[n]);
        if (cells.size() != head.size())
            throw InvalidInput(fmt::format("spectrum CSV line {} has {} cells", n + 1, cells.size()));
        if (!parses_as_number(cells[0]))
            throw InvalidInput(fmt::format("spectrum CSV line {}: delta_norm is not numeric", n + 1));
        const bool gap = std::all_of(cells.begin() + 1, cells.end(), [](const auto& s) { return s.empty(); });
        if (!gap)
            for (std::size_t i = 1; i < cells.size(); ++i)
                if (!parses_as_number(cells[i]))
                    throw InvalidInput(fmt::format("spectrum CSV line {}: '{}' in column {} is not numeric", n + 1,
                                                   cells[i], kSpectrumColumns[i]));
        ++c.rows;
    }
    if (c.rows == 0) throw InvalidInput("spectrum CSV has no data rows");
    return c;
}

CsvCheck validate_grid_csv(const std::string& text) {
    const auto lines = lines_of(text);
    if (lines.size() < 2) throw InvalidInput("grid CSV needs an axis row and at least one data row");
    const auto head = split_csv_line(lines[0]);
    if (head.size() < 2 || !head[0].empty()) throw InvalidInput("grid CSV first row must start with an empty cell");
    for (std::size_t i = 1; i < head.size(); ++i)
        if (!parses_as_number(head[i])) throw InvalidInput(fmt::format("grid CSV axis value '{}' is not numeric", head[i]));
    CsvCheck c{0, head.size() - 1};
    for (std::size_t n = 1; n < lines.size(); ++n) {
        if (lines[n].empty()) continue;
        const auto cells = split_csv_line(lines[n]);
        if (cells.size() != head.size())
            throw InvalidInput(fmt::format("grid CSV line {} has {} cells, expected {}", n + 1, cells.size(), head.size()));
        for (std::size_t i = 1; i < cells.size(); ++i)
            if (!cells[i].empty() && !parses_as_number(cells[i]))
                throw InvalidInput(fmt::format("grid CSV line {}: '{}' is not numeric", n + 1, cells[i]));
        ++c.rows;
    }
    return c;
}

std::string provenance_json(const Provenance& p) {
    nlohmann::ordered_json j;
    j["tool"] = "fanocav";
    j["version"] = kVersion;
    j["command"] = p.command;
    j["mode"] = to_string(p.settings.response.mode);
    j["counter_sideband"] = p.settings.response.keep_counter_sideband;
    if (!p.preset.empty()) {
        j["preset"] = p.preset;
        j["preset_definition"] = p.preset_definition;
    }
    j["config"] = nlohmann::ordered_json::parse(resolved_config_json(p.settings));
    try {
        j["resolved_parameters"] = params_json(resolve(p.settings.params));
        j["normalized_parameters"] = params_json(normalize(p.settings.params));
    } catch (const Error& e) {
        // family presets may leave the base incomplete until a curve value is applied
        j["resolved_parameters"] = nullptr;
        j["resolution_note"] = e.what();
    }
    j["warnings"] = p.warnings;
    j["results"] = nlohmann::ordered_json::parse(p.extra_json);
    return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content, bool force) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (fs::exists(path, ec) && !force)
        throw ConfigError(fmt::format("refusing to overwrite '{}' (use --force)", path.string()));
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError(fmt::format("cannot write '{}'", tmp.string()));
        out << content;
        if (!out) throw ConfigError(fmt::format("failed writing '{}'", tmp.string()));
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ConfigError(fmt::format("cannot move output into place at '{}'", path.string()));
    }
}

}  // namespace fanocav

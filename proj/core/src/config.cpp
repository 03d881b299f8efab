#include "fanocav/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "fanocav/errors.hpp"

namespace fanocav {

namespace {

enum class KeyKind { rate, real, integer, text, boolean, list, axis };

struct KeyDef {
    const char* section;
    const char* name;
    KeyKind kind;
};

constexpr KeyDef kKeys[] = {
    {"cavity", "kappa", KeyKind::rate},
    {"cavity", "Delta", KeyKind::rate},
    {"cavity", "detuning_ratio", KeyKind::real},
    {"cavity", "Delta_c", KeyKind::rate},
    {"cavity", "U0", KeyKind::rate},
    {"condensate", "omega_b", KeyKind::rate},
    {"condensate", "gamma_b", KeyKind::rate},
    {"condensate", "g", KeyKind::rate},
    {"condensate", "U_eff", KeyKind::rate},
    {"condensate", "nu", KeyKind::rate},
    {"condensate", "N", KeyKind::integer},
    {"condensate", "M", KeyKind::integer},
    {"condensate", "J0", KeyKind::real},
    {"condensate", "E0", KeyKind::real},
    {"condensate", "V_cl", KeyKind::real},
    {"condensate", "U", KeyKind::real},
    {"drive", "P_l", KeyKind::real},
    {"drive", "P_p", KeyKind::real},
    {"drive", "omega_l", KeyKind::rate},
    {"drive", "omega_p", KeyKind::rate},
    {"drive", "coupling_per_photon", KeyKind::real},
    {"drive", "calibrate_g", KeyKind::rate},
    {"drive", "calibrate_P_l", KeyKind::real},
    {"mode", "omega_b_source", KeyKind::text},
    {"mode", "response", KeyKind::text},
    {"mode", "counter_sideband", KeyKind::boolean},
    {"mode", "delay_step", KeyKind::real},
    {"mode", "stability_policy", KeyKind::text},
    {"mode", "threads", KeyKind::integer},
    {"grid", "delta_min", KeyKind::real},
    {"grid", "delta_max", KeyKind::real},
    {"grid", "points", KeyKind::integer},
    {"grid", "probe_delta", KeyKind::real},
    {"family", "parameter", KeyKind::text},
    {"family", "values", KeyKind::list},
    {"sweep", "axis1", KeyKind::axis},
    {"sweep", "axis2", KeyKind::axis},
    {"sweep", "observable", KeyKind::text},
    {"delay", "axis", KeyKind::axis},
    {"preset", "name", KeyKind::text},
    {"preset", "kind", KeyKind::text},
    {"preset", "description", KeyKind::text},
};

constexpr const char* kSuffixes[] = {"", "_hz", "_wb"};

const KeyDef* find_key(const std::string& section, const std::string& name) {
    for (const auto& k : kKeys)
        if (section == k.section && name == k.name) return &k;
    return nullptr;
}

struct ParsedKey {
    const KeyDef* def = nullptr;
    std::string suffix;
};

ParsedKey parse_key(const std::string& section, const std::string& name) {
    if (const KeyDef* k = find_key(section, name)) return {k, ""};
    for (const char* suf : {"_hz", "_wb"}) {
        const std::string s(suf);
        if (name.size() > s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0) {
            const KeyDef* k = find_key(section, name.substr(0, name.size() - s.size()));
            if (k && k->kind == KeyKind::rate) {
                if (s == "_wb" && std::string(k->name) == "omega_b")
                    throw ConfigError("condensate.omega_b cannot be given in units of itself");
                return {k, s};
            }
        }
    }
    throw ConfigError(fmt::format("unknown configuration key '{}.{}' (valid: {})", section, name,
                                  fmt::join(config_keys(), ", ")));
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
    return v;
}

long long to_integer(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        // integral values written in floating form, e.g. 1e5
        const double d = to_double(key, text);
        if (d != std::floor(d) || std::abs(d) > 9e15)
            throw ConfigError(fmt::format("{}: '{}' is not an integer", key, text));
        return static_cast<long long>(d);
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, text));
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
    if (out.empty()) throw ConfigError(fmt::format("{}: empty list", key));
    return out;
}

std::string number(double v) { return fmt::format("{}", v); }

}  // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> out;
    for (const auto& k : kKeys) out.push_back(fmt::format("{}.{}", k.section, k.name));
    return out;
}

std::string format_axis(const Axis& a) {
    if (!a.explicit_values.empty()) {
        std::vector<std::string> v;
        for (double x : a.explicit_values) v.push_back(number(x));
        return fmt::format("{}: {}", a.parameter, fmt::join(v, ", "));
    }
    return fmt::format("{} {} {} {} {}", a.parameter, number(a.lower), number(a.upper), a.points,
                       to_string(a.spacing));
}

Axis parse_axis(const std::string& text) {
    Axis a;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        a.parameter = trim(text.substr(0, colon));
        a.explicit_values = to_list("axis", text.substr(colon + 1));
        return a;
    }
    std::stringstream ss(text);
    std::vector<std::string> parts;
    for (std::string w; ss >> w;) parts.push_back(w);
    if (parts.size() != 4 && parts.size() != 5)
        throw ConfigError(fmt::format("axis '{}': expected 'name lower upper points [linear|log]'", text));
    a.parameter = parts[0];
    a.lower = to_double("axis lower", parts[1]);
    a.upper = to_double("axis upper", parts[2]);
    const long long n = to_integer("axis points", parts[3]);
    if (n < 2) throw ConfigError(fmt::format("axis '{}': needs at least 2 points", text));
    a.points = static_cast<std::size_t>(n);
    if (parts.size() == 5) {
        try {
            a.spacing = spacing_from_string(parts[4]);
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }
    return a;
}

void Config::set(const std::string& key, const std::string& value) {
    std::string section, name;
    if (const auto dot = key.find('.'); dot != std::string::npos) {
        section = trim(key.substr(0, dot));
        name = trim(key.substr(dot + 1));
    } else {
        name = trim(key);
        std::vector<std::string> owners;
        for (const auto& k : kKeys) {
            for (const char* suf : kSuffixes) {
                if (name == std::string(k.name) + suf && (suf[0] == '\0' || k.kind == KeyKind::rate)) {
                    owners.emplace_back(k.section);
                    break;
                }
            }
        }
        if (owners.empty())
            throw ConfigError(
                fmt::format("unknown configuration key '{}' (valid: {})", name, fmt::join(config_keys(), ", ")));
        if (owners.size() > 1)
            throw ConfigError(fmt::format("key '{}' is ambiguous; prefix it with one of: {}", name,
                                          fmt::join(owners, ", ")));
        section = owners.front();
    }
    const ParsedKey pk = parse_key(section, name);
    for (const char* suf : kSuffixes)
        entries_.erase(fmt::format("{}.{}{}", section, pk.def->name, suf));
    entries_[fmt::format("{}.{}", section, name)] = trim(value);
}

void Config::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError(fmt::format("override '{}' is not of the form key=value", assignment));
    set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

Config Config::from_ini_text(const std::string& text) {
    // '#' comments are accepted as well as ';'
    std::stringstream cleaned;
    std::stringstream in(text);
    for (std::string line; std::getline(in, line);) {
        const std::string t = trim(line);
        if (!t.empty() && t.front() == '#') continue;
        cleaned << line << '\n';
    }
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(cleaned, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(fmt::format("malformed configuration: {}", e.message()));
    }
    Config c;
    for (const auto& [section, body] : tree) {
        if (body.empty())
            throw ConfigError(fmt::format("key '{}' appears outside any section", section));
        for (const auto& [name, value] : body) c.set(section + "." + name, value.data());
    }
    return c;
}

Config Config::from_ini_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open configuration file '{}'", path.string()));
    std::stringstream ss;
    ss << in.rdbuf();
    return from_ini_text(ss.str());
}

Config Config::from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(fmt::format("malformed JSON configuration: {}", e.what()));
    }
    if (!doc.is_object()) throw ConfigError("JSON configuration must be an object of sections");
    Config c;
    for (const auto& [section, body] : doc.items()) {
        if (!body.is_object()) throw ConfigError(fmt::format("section '{}' must be an object", section));
        for (const auto& [name, value] : body.items()) {
            const std::string key = section + "." + name;
            std::string text_value;
            if (value.is_string()) {
                text_value = value.get<std::string>();
            } else if (value.is_boolean()) {
                text_value = value.get<bool>() ? "true" : "false";
            } else if (value.is_number_integer()) {
                text_value = fmt::format("{}", value.get<long long>());
            } else if (value.is_number()) {
                text_value = number(value.get<double>());
            } else if (value.is_array()) {
                std::vector<std::string> items;
                for (const auto& v : value) {
                    if (!v.is_number()) throw ConfigError(fmt::format("{}: list entries must be numbers", key));
                    items.push_back(number(v.get<double>()));
                }
                text_value = fmt::format("{}", fmt::join(items, ","));
            } else {
                throw ConfigError(fmt::format("{}: unsupported value type", key));
            }
            c.set(key, text_value);
        }
    }
    return c;
}

Config Config::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open configuration file '{}'", path.string()));
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

Config Config::from_file(const std::filesystem::path& path) {
    if (path.extension() == ".json") return from_json_file(path);
    return from_ini_file(path);
}

RunSettings Config::build() const {
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    };

    RunSettings s;
    SystemParams& p = s.params;

    if (auto v = get("mode.omega_b_source")) {
        try {
            p.omega_b_source = omega_b_source_from_string(*v);
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }

    std::optional<double> wb_ref;
    if (auto v = get("condensate.omega_b")) wb_ref = to_double("condensate.omega_b", *v);
    if (auto v = get("condensate.omega_b_hz")) wb_ref = from_hz(to_double("condensate.omega_b_hz", *v));

    auto rate = [&](const std::string& key) -> std::optional<double> {
        if (auto v = get(key)) return to_double(key, *v);
        if (auto v = get(key + "_hz")) return from_hz(to_double(key + "_hz", *v));
        if (auto v = get(key + "_wb")) {
            if (!wb_ref)
                throw ConfigError(fmt::format("{}_wb needs condensate.omega_b (or omega_b_hz) as the unit", key));
            return to_double(key + "_wb", *v) * *wb_ref;
        }
        return std::nullopt;
    };
    auto real = [&](const std::string& key) -> std::optional<double> {
        if (auto v = get(key)) return to_double(key, *v);
        return std::nullopt;
    };

    if (wb_ref) p.omega_b = *wb_ref;
    if (auto v = rate("cavity.kappa")) p.kappa = *v;
    if (auto v = rate("cavity.Delta")) p.Delta = *v;
    if (auto v = real("cavity.detuning_ratio")) p.detuning_ratio = *v;
    if (auto v = rate("condensate.gamma_b")) p.gamma_b = *v;
    if (auto v = rate("condensate.g")) p.g = *v;
    if (auto v = rate("condensate.U_eff")) p.U_eff = *v;
    if (auto v = rate("condensate.nu")) p.nu = *v;
    if (auto v = get("condensate.N")) p.N = to_integer("condensate.N", *v);
    if (auto v = get("condensate.M")) p.M = to_integer("condensate.M", *v);
    if (auto v = real("drive.P_l")) p.P_l = *v;
    if (auto v = real("drive.P_p")) p.P_p = *v;
    if (auto v = rate("drive.omega_l")) p.omega_l = *v;
    if (auto v = rate("drive.omega_p")) p.omega_p = *v;
    if (auto v = real("drive.coupling_per_photon")) p.coupling_per_photon = *v;

    const auto Delta_c = rate("cavity.Delta_c");
    const auto U0 = rate("cavity.U0");
    const auto J0 = real("condensate.J0");
    const auto E0 = real("condensate.E0");
    const auto V_cl = real("condensate.V_cl");
    const auto U = real("condensate.U");
    if (Delta_c || U0 || J0 || E0 || V_cl || U) {
        MicroscopicInputs m;
        m.Delta_c = Delta_c.value_or(0.0);
        m.U0 = U0.value_or(0.0);
        m.J0 = J0.value_or(0.0);
        m.E0 = E0.value_or(0.0);
        m.V_cl = V_cl.value_or(0.0);
        m.U = U.value_or(0.0);
        p.micro = m;
    }

    if (auto v = get("mode.response")) {
        try {
            s.response.mode = response_mode_from_string(*v);
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }
    if (auto v = get("mode.counter_sideband")) s.response.keep_counter_sideband = to_bool("mode.counter_sideband", *v);
    if (auto v = real("mode.delay_step")) s.response.delay_step = *v;
    if (auto v = get("mode.stability_policy")) {
        try {
            s.stability = stability_policy_from_string(*v);
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }
    if (auto v = get("mode.threads")) {
        const long long n = to_integer("mode.threads", *v);
        if (n < 0) throw ConfigError("mode.threads must be >= 0");
        s.threads = static_cast<unsigned>(n);
    }

    if (auto v = real("grid.delta_min")) s.delta_min = *v;
    if (auto v = real("grid.delta_max")) s.delta_max = *v;
    if (auto v = get("grid.points")) {
        const long long n = to_integer("grid.points", *v);
        if (n < 2) throw ConfigError("grid.points must be >= 2");
        s.points = static_cast<std::size_t>(n);
    }
    if (!(s.delta_max > s.delta_min)) throw ConfigError("grid.delta_max must exceed grid.delta_min");
    if (auto v = real("grid.probe_delta")) s.probe_delta = *v;

    const auto family_param = get("family.parameter");
    const auto family_values = get("family.values");
    if (family_param.has_value() != family_values.has_value())
        throw ConfigError("family.parameter and family.values must be given together");
    if (family_param) s.family = Family{*family_param, to_list("family.values", *family_values)};

    if (auto v = get("sweep.axis1")) s.axis1 = parse_axis(*v);
    if (auto v = get("sweep.axis2")) s.axis2 = parse_axis(*v);
    if (auto v = get("sweep.observable")) {
        try {
            s.observable = observable_from_string(*v);
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }
    if (auto v = get("delay.axis")) {
        s.pump_axis = parse_axis(*v);
        if (s.pump_axis->parameter != "P_l") throw ConfigError("delay.axis must sweep P_l");
    }

    if (auto v = get("preset.name")) s.preset = *v;
    if (auto v = get("preset.kind")) s.kind = *v;
    if (auto v = get("preset.description")) s.description = *v;

    const auto cal_g = rate("drive.calibrate_g");
    const auto cal_P = real("drive.calibrate_P_l");
    if (cal_g.has_value() != cal_P.has_value())
        throw ConfigError("drive.calibrate_g and drive.calibrate_P_l must be given together");
    if (cal_g) {
        if (p.coupling_per_photon)
            throw ConfigError("give either drive.coupling_per_photon or drive.calibrate_g, not both");
        try {
            p.coupling_per_photon = calibrate_coupling_per_photon(p, *cal_g, *cal_P);
        } catch (const InvalidParameter& e) {
            throw ConfigError(fmt::format("coupling calibration failed: {}", e.what()));
        }
    }
    return s;
}

std::string resolved_config_json(const RunSettings& s) {
    using nlohmann::ordered_json;
    const SystemParams& p = s.params;
    ordered_json doc;

    if (!s.preset.empty() || !s.kind.empty()) {
        ordered_json& pre = doc["preset"];
        if (!s.preset.empty()) pre["name"] = s.preset;
        if (!s.kind.empty()) pre["kind"] = s.kind;
        if (!s.description.empty()) pre["description"] = s.description;
    }

    ordered_json& cav = doc["cavity"];
    cav["kappa"] = p.kappa;
    cav["Delta"] = p.Delta;
    if (p.detuning_ratio) cav["detuning_ratio"] = *p.detuning_ratio;

    ordered_json& cond = doc["condensate"];
    cond["omega_b"] = p.omega_b;
    cond["gamma_b"] = p.gamma_b;
    cond["g"] = p.g;
    cond["U_eff"] = p.U_eff;
    cond["nu"] = p.nu;
    cond["N"] = p.N;
    cond["M"] = p.M;
    if (p.micro) {
        cav["Delta_c"] = p.micro->Delta_c;
        cav["U0"] = p.micro->U0;
        cond["J0"] = p.micro->J0;
        cond["E0"] = p.micro->E0;
        cond["V_cl"] = p.micro->V_cl;
        cond["U"] = p.micro->U;
    }

    ordered_json& drive = doc["drive"];
    drive["P_l"] = p.P_l;
    drive["P_p"] = p.P_p;
    drive["omega_l"] = p.omega_l;
    drive["omega_p"] = p.omega_p;
    if (p.coupling_per_photon) drive["coupling_per_photon"] = *p.coupling_per_photon;

    ordered_json& mode = doc["mode"];
    mode["omega_b_source"] = to_string(p.omega_b_source);
    mode["response"] = to_string(s.response.mode);
    mode["counter_sideband"] = s.response.keep_counter_sideband;
    mode["delay_step"] = s.response.delay_step;
    mode["stability_policy"] = to_string(s.stability);
    mode["threads"] = s.threads;

    ordered_json& grid = doc["grid"];
    grid["delta_min"] = s.delta_min;
    grid["delta_max"] = s.delta_max;
    grid["points"] = s.points;
    grid["probe_delta"] = s.probe_delta;

    if (s.family) {
        doc["family"]["parameter"] = s.family->parameter;
        doc["family"]["values"] = s.family->values;
    }
    if (s.axis1 || s.axis2) {
        ordered_json& sw = doc["sweep"];
        if (s.axis1) sw["axis1"] = format_axis(*s.axis1);
        if (s.axis2) sw["axis2"] = format_axis(*s.axis2);
        sw["observable"] = to_string(s.observable);
    }
    if (s.pump_axis) doc["delay"]["axis"] = format_axis(*s.pump_axis);
    return doc.dump(2);
}

}  // namespace fanocav

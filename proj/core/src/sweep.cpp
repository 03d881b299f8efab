#include "fanocav/sweep.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "fanocav/errors.hpp"

namespace fanocav {

const char* to_string(Observable o) {
    switch (o) {
        case Observable::mu: return "mu";
        case Observable::nu_out: return "nu_out";
        case Observable::t_abs2: return "t_abs2";
        case Observable::phase: return "phase";
        case Observable::tau_g: return "tau_g";
    }
    return "mu";
}

Observable observable_from_string(const std::string& s) {
    for (auto o : {Observable::mu, Observable::nu_out, Observable::t_abs2, Observable::phase, Observable::tau_g})
        if (s == to_string(o)) return o;
    throw InvalidSpec(fmt::format("unknown observable '{}' (valid: mu, nu_out, t_abs2, phase, tau_g)", s));
}

const char* to_string(Spacing s) { return s == Spacing::linear ? "linear" : "log"; }

Spacing spacing_from_string(const std::string& s) {
    if (s == "linear" || s == "lin") return Spacing::linear;
    if (s == "log") return Spacing::log;
    throw InvalidSpec(fmt::format("unknown axis spacing '{}' (valid: linear, log)", s));
}

const char* to_string(StabilityPolicy s) { return s == StabilityPolicy::gap ? "gap" : "report"; }

StabilityPolicy stability_policy_from_string(const std::string& s) {
    if (s == "gap") return StabilityPolicy::gap;
    if (s == "report") return StabilityPolicy::report;
    throw InvalidSpec(fmt::format("unknown stability policy '{}' (valid: gap, report)", s));
}

const std::vector<std::string>& sweep_parameter_names() {
    static const std::vector<std::string> names{"kappa", "gamma_b", "damping_override", "Delta", "g", "U_eff",
                                                "nu",    "Omega_l", "eps_p",            "P_l",   "P_p", "delta"};
    return names;
}

namespace {

void check_name(const std::string& name) {
    const auto& names = sweep_parameter_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw InvalidSpec(fmt::format("unknown sweep parameter '{}' (valid: {})", name, fmt::join(names, ", ")));
}

}  // namespace

std::vector<double> Axis::values() const {
    if (!explicit_values.empty()) return explicit_values;
    return spacing == Spacing::log ? logspace(lower, upper, points) : linspace(lower, upper, points);
}

void Axis::validate() const {
    check_name(parameter);
    if (!explicit_values.empty()) {
        for (double v : explicit_values)
            if (!std::isfinite(v)) throw InvalidSpec(fmt::format("axis '{}' has a non-finite value", parameter));
        return;
    }
    if (points < 2) throw InvalidSpec(fmt::format("axis '{}' needs at least 2 points", parameter));
    if (!std::isfinite(lower) || !std::isfinite(upper))
        throw InvalidSpec(fmt::format("axis '{}' bounds must be finite", parameter));
    if (spacing == Spacing::log && (lower <= 0.0 || upper <= 0.0))
        throw InvalidSpec(fmt::format("log axis '{}' needs positive bounds", parameter));
}

void apply_parameter(SystemParams& p, const std::string& name, double value, double& probe_delta,
                     std::optional<double>& Omega_l, std::optional<double>& eps_p) {
    const double wb = p.omega_b;
    if (name == "kappa") p.kappa = value * wb;
    else if (name == "gamma_b" || name == "damping_override") p.gamma_b = value * wb;
    else if (name == "Delta") p.detuning_ratio = value;
    else if (name == "g") {
        p.g = value * wb;
        p.coupling_per_photon.reset();
    }
    else if (name == "U_eff") p.U_eff = value * wb;
    else if (name == "nu") p.nu = value * wb;
    else if (name == "P_l") p.P_l = value;
    else if (name == "P_p") p.P_p = value;
    else if (name == "delta") probe_delta = value;
    else if (name == "Omega_l") Omega_l = value;
    else if (name == "eps_p") eps_p = value;
    else check_name(name);
}

double observable_value(const ProbeResponse& r, Observable o) {
    switch (o) {
        case Observable::mu: return r.mu;
        case Observable::nu_out: return r.nu_out;
        case Observable::t_abs2: return std::norm(r.t_p);
        case Observable::phase: return r.phase;
        case Observable::tau_g: return r.tau_g * 1e6;
    }
    return r.mu;
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.axis1.validate();
    if (spec.axis2) spec.axis2->validate();

    SweepResult out;
    out.resolved_base = resolve(spec.base);
    out.warnings = normalize(spec.base).warnings;
    out.axis1 = spec.axis1.values();
    if (spec.axis2) out.axis2 = spec.axis2->values();

    const std::size_t cols = out.axis1.size();
    const std::size_t rows = out.rows();
    out.values.assign(rows * cols, std::nullopt);
    std::vector<char> stable(rows * cols, 0);

    parallel_for(rows * cols, spec.threads, [&](std::size_t idx) {
        const std::size_t row = idx / cols;
        const std::size_t col = idx % cols;
        SystemParams sp = spec.base;
        double delta = spec.probe_delta;
        std::optional<double> Omega_l, eps_p;
        if (spec.axis2) apply_parameter(sp, spec.axis2->parameter, out.axis2[row], delta, Omega_l, eps_p);
        apply_parameter(sp, spec.axis1.parameter, out.axis1[col], delta, Omega_l, eps_p);

        EffectiveParams ep = normalize(sp);
        if (Omega_l) ep.Omega_l = *Omega_l;
        if (eps_p) ep.eps_p = *eps_p;

        const bool ok = stability_check(ep).stable;
        stable[idx] = ok ? 1 : 0;
        if (!ok && spec.stability == StabilityPolicy::gap) return;
        try {
            out.values[idx] = observable_value(evaluate(ep, delta, spec.response), spec.observable);
        } catch (const PoleError&) {
        } catch (const DegenerateResponse&) {
        } catch (const PhaseUndefined&) {
        }
    });

    out.stable.assign(stable.begin(), stable.end());
    out.unstable = static_cast<std::size_t>(std::count(stable.begin(), stable.end(), 0));
    out.gaps = static_cast<std::size_t>(
        std::count_if(out.values.begin(), out.values.end(), [](const auto& v) { return !v.has_value(); }));
    return out;
}

const char* to_string(FlipVerdict v) {
    switch (v) {
        case FlipVerdict::flipped: return "flipped";
        case FlipVerdict::not_flipped: return "not_flipped";
        case FlipVerdict::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

FlipReport asymmetry_flip_report(std::span<const double> delta_a, std::span<const double> mu_a,
                                 std::span<const double> delta_b, std::span<const double> mu_b) {
    FlipReport r;
    try {
        r.a = locate_landmarks(delta_a, mu_a);
        r.b = locate_landmarks(delta_b, mu_b);
    } catch (const Error& e) {
        r.reason = e.what();
        return r;
    }
    const double sa = r.a.delta_at_max - r.a.delta_at_min;
    const double sb = r.b.delta_at_max - r.b.delta_at_min;
    if (sa == 0.0 || sb == 0.0) {
        r.reason = "peak and zero coincide";
        return r;
    }
    r.verdict = (sa > 0.0) != (sb > 0.0) ? FlipVerdict::flipped : FlipVerdict::not_flipped;
    return r;
}

std::vector<double> absorption(EffectiveParams p, double Delta, std::span<const double> grid,
                               const ResponseOptions& opt) {
    p.Delta = Delta;
    std::vector<double> mu(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) mu[i] = normalized_output(p, grid[i], opt).real();
    return mu;
}

std::vector<DelayRow> delay_curve(const SystemParams& base, std::span<const double> P_l, double probe_delta,
                                  const ResponseOptions& opt) {
    for (double v : P_l)
        if (!(v > 0.0)) throw InvalidSpec("delay curve needs positive pump powers");
    std::vector<DelayRow> rows(P_l.size());
    parallel_for(P_l.size(), 0, [&](std::size_t i) {
        SystemParams sp = base;
        sp.P_l = P_l[i];
        const EffectiveParams ep = normalize(sp);
        rows[i].P_l = P_l[i];
        rows[i].g = ep.g;
        rows[i].stable = stability_check(ep).stable;
        rows[i].tau_g = group_delay(ep, probe_delta, opt.delay_step, opt);
    });
    return rows;
}

}  // namespace fanocav

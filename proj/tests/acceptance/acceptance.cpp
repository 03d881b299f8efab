// Acceptance checks 1-9. One line per criterion; exit status 0 only if every
// selected criterion passes. Usage: fanocav_acceptance [criterion ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fanocav/config.hpp"
#include "fanocav/fano.hpp"
#include "fanocav/langevin.hpp"
#include "fanocav/presets.hpp"
#include "fanocav/response.hpp"
#include "fanocav/sweep.hpp"

using namespace fanocav;

namespace {

// pinned tolerances and limits
constexpr double kEitWindow = 1e-3;
constexpr double kEitDepth = 0.05;
constexpr double kEitSeconds = 1.0;
constexpr double kZeroFraction = 1e-3;
constexpr double kCommonZeroSeconds = 3.0;
constexpr double kUlps = 4.0;
constexpr double kFlipSeconds = 5.0;
constexpr double kOracleTolerance = 0.01;
constexpr int kOracleCases = 20;
constexpr std::uint64_t kOracleSeed = 7;
constexpr double kOracleSeconds = 120.0;
constexpr double kDelayLow = 1.0;  // microseconds
constexpr double kDelayHigh = 25.0;
constexpr double kTrendSeconds = 30.0;
constexpr std::size_t kTrendPoints = 10;
constexpr double kTrendPower = 1e-3;  // W, calibration point of the delay presets
constexpr double kDetuningRatio = 5.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

EffectiveParams fig2_rates(double Delta, double g) {
    EffectiveParams p;
    p.kappa = 0.1;
    p.gamma_b = 7.5e-7;
    p.Delta = Delta;
    p.g = g;
    p.U_eff = 1.0;
    p.nu = 100.0;
    p.omega_b_si = from_hz(1e4);
    return p;
}

std::vector<double> mu_of(const EffectiveParams& p, const std::vector<double>& grid) {
    std::vector<double> mu;
    mu.reserve(grid.size());
    for (double d : grid) mu.push_back(evaluate(p, d).mu);
    return mu;
}

// Fano spectra are resolved on the resonance window |delta - omega_b| <= kappa
// at weak coupling, where every fig2 detuning is stable.
constexpr double kWeakG = 0.01;
std::vector<double> resonance_window() { return linspace(0.9, 1.1, 2001); }

Outcome eit_window() {
    const auto p = fig2_rates(1.0, 1.0);
    const auto grid = linspace(0.5, 1.5, 2001);
    const auto mu = mu_of(p, grid);
    const double mu_max = *std::max_element(mu.begin(), mu.end());
    double best = std::numeric_limits<double>::infinity();
    double where = 0.0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        if (std::abs(grid[i] - 1.0) >= kEitWindow) continue;
        if (mu[i] <= mu[i - 1] && mu[i] <= mu[i + 1] && mu[i] < best) {
            best = mu[i];
            where = grid[i];
        }
    }
    const bool found = std::isfinite(best);
    const bool pass = found && best < kEitDepth * mu_max;
    const auto st = stability_check(p);
    return {pass, found ? fmt::format("local min mu = {:.4g} at delta = {:.6g}, mu_max = {:.4g}, ratio {:.3g} "
                                      "(need < {}); stable = {}",
                                      best, where, mu_max, best / mu_max, kEitDepth, st.stable)
                        : fmt::format("no local minimum within |delta - 1| < {}; mu_max = {:.4g}; stable = {}",
                                      kEitWindow, mu_max, st.stable)};
}

Outcome common_zero() {
    const auto grid = linspace(0.5, 1.5, 2001);
    bool all_zero = true;
    std::vector<int> order;
    std::string detail;
    for (double g : {5.0, 20.0, 50.0}) {
        const auto mu = mu_of(fig2_rates(0.8, g), grid);
        const auto l = locate_landmarks(grid, mu);
        const bool has_zero = l.mu_min < kZeroFraction * l.mu_max;
        all_zero = all_zero && has_zero;
        order.push_back(l.delta_at_max > l.delta_at_min ? 1 : -1);
        detail += fmt::format("g={}: min {:.3g} @ {:.4f}, peak {:.3g} @ {:.4f}; ", g, l.mu_min, l.delta_at_min,
                              l.mu_max, l.delta_at_max);
    }
    const bool same = std::all_of(order.begin(), order.end(), [&](int o) { return o == order.front(); });
    return {all_zero && same, detail + fmt::format("orderings {}", same ? "identical" : "differ")};
}

Outcome fano_identities() {
    const double eps = std::numeric_limits<double>::epsilon();
    double worst_zero = 0.0, worst_peak = 0.0;
    for (double q : {0.1, -0.1, 1.0, -1.0, 2.0, -2.0, 10.0, -10.0}) {
        worst_zero = std::max(worst_zero, std::abs(fano_lineshape(-q, q)));
        worst_peak = std::max(worst_peak, std::abs(fano_lineshape(1.0 / q, q) - 2.0));
    }
    const double q = fano_params_from_system(fig2_rates(0.8, 0.1)).q;
    const double tol = kUlps * eps * 2.0;
    const bool pass = worst_zero == 0.0 && worst_peak <= tol && std::abs(q - 2.0) <= tol;
    return {pass, fmt::format("max |F(-q,q)| = {:.3g}, max |F(1/q,q) - 2| = {:.3g}, q(Delta=0.8) - 2 = {:.3g} "
                              "(tolerance {:.3g})",
                              worst_zero, worst_peak, q - 2.0, tol)};
}

Outcome flip() {
    const auto grid = resonance_window();
    const auto base = fig2_rates(1.0, kWeakG);
    const auto a = asymmetry_flip_report(grid, absorption(base, 0.8, grid), grid, absorption(base, 1.2, grid));
    const auto b = asymmetry_flip_report(grid, absorption(base, 0.7, grid), grid, absorption(base, 0.9, grid));
    const bool pass = a.verdict == FlipVerdict::flipped && b.verdict == FlipVerdict::not_flipped;
    return {pass, fmt::format("0.8 vs 1.2: {}; 0.7 vs 0.9: {} (g = {}, delta in [0.9, 1.1])", to_string(a.verdict),
                              to_string(b.verdict), kWeakG)};
}

Outcome oracle() {
    const auto cases = draw_stable_cases(kOracleCases, kOracleSeed);
    std::vector<double> err(cases.size());
    parallel_for(cases.size(), 0,
                 [&](std::size_t i) { err[i] = compare_with_solver(cases[i].params, cases[i].delta).relative_error; });
    const double worst = *std::max_element(err.begin(), err.end());
    return {worst < kOracleTolerance,
            fmt::format("{} stable sets, seed {}: max relative error {:.3e} (need < {})", cases.size(), kOracleSeed,
                        worst, kOracleTolerance)};
}

Outcome slow_light() {
    const RunSettings s = preset_config("fig8").build();
    const auto P = s.pump_axis->values();
    const auto rows = delay_curve(s.params, P, s.probe_delta, s.response);
    const bool positive = std::all_of(rows.begin(), rows.end(), [](const DelayRow& r) { return r.tau_g > 0.0; });
    const DelayRow& mid = rows[rows.size() / 2];
    const double us = mid.tau_g * 1e6;
    const double fb = normalize(s.params).omega_b_si / kTwoPi;
    const bool pass = positive && us >= kDelayLow && us <= kDelayHigh;
    return {pass, fmt::format("all tau_g > 0: {}; midpoint P_l = {:.3g} W gives {:.4g} us (need [{}, {}]), "
                              "omega_b/2pi = {:.6g} Hz",
                              positive, mid.P_l, us, kDelayLow, kDelayHigh, fb)};
}

// tau_g in microseconds along the preset's axis2 at one pump power
std::vector<double> preset_column(const std::string& name, double P_l, std::vector<double>& axis) {
    const RunSettings s = preset_config(name).build();
    SweepSpec spec;
    spec.base = s.params;
    spec.axis1 = Axis{"P_l", 0, 0, 2, Spacing::linear, {P_l}};
    spec.axis2 = s.axis2;
    spec.observable = s.observable;
    spec.response = s.response;
    spec.stability = s.stability;
    spec.probe_delta = s.probe_delta;
    const SweepResult r = run_sweep(spec);
    axis = r.axis2;
    std::vector<double> out;
    for (const auto& v : r.values) out.push_back(v ? *v : std::numeric_limits<double>::quiet_NaN());
    return out;
}

Outcome monotone_trends() {
    std::vector<double> U, damping;
    const auto tu = preset_column("fig10", kTrendPower, U);
    const auto td = preset_column("fig9", kTrendPower, damping);
    auto count_violations = [](const std::vector<double>& v, int sign) {
        std::size_t bad = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(sign * (v[i] - v[i - 1]) >= 0.0)) ++bad;
        return bad;
    };
    const std::size_t bad_u = count_violations(tu, +1);
    const std::size_t bad_d = count_violations(td, -1);
    const bool enough = U.size() >= kTrendPoints && damping.size() >= kTrendPoints;
    return {enough && bad_u == 0 && bad_d == 0,
            fmt::format("P_l = {} W; U_eff 1..100 ({} pts): tau {:.4g} -> {:.4g} us, {} decreasing steps; "
                        "damping {:.3g}..{:.3g} ({} pts): tau {:.4g} -> {:.4g} us, {} increasing steps",
                        kTrendPower, U.size(), tu.front(), tu.back(), bad_u, damping.front(), damping.back(),
                        damping.size(), td.front(), td.back(), bad_d)};
}

Outcome detuning_delay() {
    std::vector<double> D;
    const auto t = preset_column("fig11", kTrendPower, D);
    auto nearest = [&](double x) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < D.size(); ++i)
            if (std::abs(D[i] - x) < std::abs(D[best] - x)) best = i;
        return best;
    };
    const std::size_t lo = nearest(0.4), hi = nearest(1.6);
    const double ratio = t[lo] / t[hi];
    return {ratio > kDetuningRatio,
            fmt::format("P_l = {} W: tau(Delta={:.3f}) = {:.4g} us, tau(Delta={:.3f}) = {:.4g} us, ratio {:.4g} "
                        "(need > {})",
                        kTrendPower, D[lo], t[lo], D[hi], t[hi], ratio, kDetuningRatio)};
}

Outcome damping_extrema() {
    const auto grid = resonance_window();
    std::vector<double> mins, maxs;
    for (double f : {1.0, 10.0, 100.0, 1000.0}) {
        auto p = fig2_rates(0.8, kWeakG);
        p.gamma_b *= f;
        const auto l = locate_landmarks(grid, mu_of(p, grid));
        mins.push_back(l.mu_min);
        maxs.push_back(l.mu_max);
    }
    bool ordered = true;
    for (std::size_t i = 1; i < mins.size(); ++i) ordered = ordered && mins[i] > mins[i - 1] && maxs[i] < maxs[i - 1];
    return {ordered, fmt::format("minima {:.6g} {:.6g} {:.6g} {:.6g}; maxima {:.8g} {:.8g} {:.8g} {:.8g} "
                                 "(Delta = 0.8, g = {})",
                                 mins[0], mins[1], mins[2], mins[3], maxs[0], maxs[1], maxs[2], maxs[3], kWeakG)};
}

struct Criterion {
    int id;
    const char* name;
    double seconds;  // 0 = no runtime bound
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "EIT window", kEitSeconds, eit_window},
        {2, "Fano asymmetry and common zero", kCommonZeroSeconds, common_zero},
        {3, "Fano identities", 0.0, fano_identities},
        {4, "flip across resonance", kFlipSeconds, flip},
        {5, "oracle equivalence", kOracleSeconds, oracle},
        {6, "slow light sign and scale", 0.0, slow_light},
        {7, "monotone delay trends", kTrendSeconds, monotone_trends},
        {8, "detuning dependence of delay", 0.0, detuning_delay},
        {9, "extrema ordering with damping", 0.0, damping_extrema},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    bool ok = true;
    for (const auto& c : all) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, fmt::format("error: {}", e.what())};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.seconds > 0.0 && dt >= c.seconds) {
            o.pass = false;
            o.detail += fmt::format("; runtime {:.2f} s exceeds {} s", dt, c.seconds);
        }
        ok = ok && o.pass;
        std::cout << fmt::format("[{}] criterion {} {}: {} ({:.2f} s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                                 o.detail, dt);
    }
    return ok ? 0 : 1;
}

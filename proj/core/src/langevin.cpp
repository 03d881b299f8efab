#include "fanocav/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "fanocav/errors.hpp"
#include "fanocav/response.hpp"

namespace fanocav {

namespace {

using cplx = std::complex<double>;

struct Rhs {
    double w2, gamma, G, kappa, Delta, g, eps, delta;
    cplx pump;       // Omega_l in full-field mode, zero otherwise
    cplx c_offset;   // c_s in full-field mode: the force acts on c - c_s

    State operator()(double t, const State& s) const {
        const cplx fluct = s.dc - c_offset;
        State d;
        d.q = s.qdot;
        d.qdot = -w2 * s.q - gamma * s.qdot - 2.0 * G * fluct.real();
        d.dc = -cplx(kappa, Delta) * s.dc - cplx(0.0, g) * s.q + pump + eps * std::polar(1.0, -delta * t);
        return d;
    }
};

State axpy(const State& y, double h, const State& k) {
    return {y.q + h * k.q, y.qdot + h * k.qdot, y.dc + h * k.dc};
}

State rk4_step(const Rhs& f, double t, const State& y, double h) {
    const State k1 = f(t, y);
    const State k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State k4 = f(t + h, axpy(y, h, k3));
    return {y.q + h / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q),
            y.qdot + h / 6.0 * (k1.qdot + 2.0 * k2.qdot + 2.0 * k3.qdot + k4.qdot),
            y.dc + h / 6.0 * (k1.dc + 2.0 * k2.dc + 2.0 * k3.dc + k4.dc)};
}

double magnitude(const State& s) {
    return std::max({std::abs(s.q), std::abs(s.qdot), std::abs(s.dc)});
}

double max_step(const EffectiveParams& p) {
    double h = std::min(0.01 / p.kappa, 0.01 * kTwoPi / p.omega_b);
    if (p.Delta != 0.0) h = std::min(h, 0.01 / std::abs(p.Delta));
    return h;
}

}  // namespace

TrajectoryConfig default_config(const EffectiveParams& p, double delta) {
    if (!(p.kappa > 0.0)) throw InvalidParameter("kappa must be > 0");
    if (!(delta > 0.0)) throw InvalidParameter("probe detuning must be > 0 for demodulation");
    TrajectoryConfig cfg;
    const double period = kTwoPi / delta;
    const double steps = std::ceil(period / max_step(p));
    cfg.dt = period / steps;
    const double gamma_eff = std::max(p.gamma_b, p.kappa / 100.0);
    cfg.t_transient = 10.0 / std::min(p.kappa, gamma_eff);
    cfg.n_periods = 200;
    return cfg;
}

void validate(const TrajectoryConfig& cfg, const EffectiveParams& p) {
    if (!(cfg.dt > 0.0)) throw InvalidParameter("dt must be > 0");
    if (cfg.dt > max_step(p) * (1.0 + 1e-12))
        throw InvalidParameter(fmt::format("dt = {:.6g} exceeds the resolution bound {:.6g}", cfg.dt, max_step(p)));
    if (!(cfg.t_transient >= 0.0)) throw InvalidParameter("t_transient must be >= 0");
    if (cfg.n_periods < 5) throw InvalidParameter("n_periods must be >= 5");
}

Trajectory integrate(const EffectiveParams& p, double delta, const TrajectoryConfig& cfg) {
    validate(cfg, p);
    if (!(delta > 0.0)) throw InvalidParameter("probe detuning must be > 0");

    const cplx c_s = steady_state_cavity(p);
    Rhs f{p.omega_b * p.omega_b, p.gamma_b, p.mechanical_drive(), p.kappa, p.Delta, p.g, p.eps_p, delta,
          cplx(0.0), cplx(0.0)};
    State y = cfg.state0;
    if (cfg.full_field) {
        f.pump = p.Omega_l;
        f.c_offset = c_s;
        y.dc += c_s;
    }

    const double scale = std::max({magnitude(cfg.state0), std::abs(p.eps_p) / p.kappa, std::abs(c_s), 1.0});
    const double limit = 1e9 * scale;

    const double period = kTwoPi / delta;
    const auto transient_steps = static_cast<long long>(std::ceil(cfg.t_transient / cfg.dt));
    const auto window_steps = static_cast<long long>(std::llround(cfg.n_periods * period / cfg.dt));

    Trajectory traj;
    traj.dt = cfg.dt;
    traj.t.reserve(static_cast<std::size_t>(window_steps + 1));
    traj.states.reserve(static_cast<std::size_t>(window_steps + 1));

    auto record = [&](double t, const State& s) {
        traj.t.push_back(t);
        State out = s;
        if (cfg.full_field) out.dc -= c_s;
        traj.states.push_back(out);
    };

    long long step = 0;
    const long long total = transient_steps + window_steps;
    for (; step < total; ++step) {
        const double t = static_cast<double>(step) * cfg.dt;
        if (step >= transient_steps) record(t, y);
        y = rk4_step(f, t, y, cfg.dt);
        const double m = magnitude(y);
        if (!(m <= limit))
            throw DivergenceError(fmt::format("trajectory diverged at step {} (t = {:.6g})", step + 1,
                                              static_cast<double>(step + 1) * cfg.dt),
                                  step + 1);
    }
    record(static_cast<double>(step) * cfg.dt, y);
    return traj;
}

cplx demodulate(const Trajectory& traj, double delta, int n_periods) {
    if (!(delta > 0.0)) throw InvalidParameter("probe detuning must be > 0");
    if (n_periods < 1) throw InvalidWindow("n_periods must be >= 1");
    if (traj.t.size() < 2 || traj.t.size() != traj.states.size()) throw InvalidWindow("empty trajectory");

    const double window = n_periods * kTwoPi / delta;
    const double steps_exact = window / traj.dt;
    const auto steps = static_cast<std::size_t>(std::llround(steps_exact));
    if (std::abs(steps_exact - static_cast<double>(steps)) > 1e-6 * std::max(1.0, steps_exact))
        throw InvalidWindow("sampling step does not divide the beat period");
    if (steps + 1 > traj.t.size())
        throw InvalidWindow(fmt::format("trajectory covers {:.6g} periods, {} requested",
                                        (traj.t.back() - traj.t.front()) * delta / kTwoPi, n_periods));

    cplx acc(0.0);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        acc += w * traj.states[i].dc * std::polar(1.0, delta * traj.t[i]);
    }
    return acc * traj.dt / window;
}

OracleComparison compare_with_solver(const EffectiveParams& p, double delta, const TrajectoryConfig& cfg) {
    OracleComparison c;
    c.solver = solve_sidebands(p, delta).c_minus;
    const Trajectory traj = integrate(p, delta, cfg);
    c.demodulated = demodulate(traj, delta, cfg.n_periods);
    c.relative_error = std::abs(c.demodulated - c.solver) / std::abs(c.solver);
    return c;
}

OracleComparison compare_with_solver(const EffectiveParams& p, double delta) {
    return compare_with_solver(p, delta, default_config(p, delta));
}

std::vector<OracleCase> draw_stable_cases(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> kappa(0.05, 0.5), g(0.0, 2.0), det(0.5, 1.5), log_gamma(-6.0, -2.0),
        U(0.5, 2.0), nu(1.0, 100.0);
    std::vector<OracleCase> out;
    while (static_cast<int>(out.size()) < n) {
        OracleCase c;
        c.params.kappa = kappa(rng);
        c.params.g = g(rng);
        c.params.Delta = det(rng);
        c.delta = det(rng);
        c.params.gamma_b = std::pow(10.0, log_gamma(rng));
        c.params.U_eff = U(rng);
        c.params.nu = nu(rng);
        c.params.eps_p = 1.0;
        if (stability_check(c.params).stable) out.push_back(c);
    }
    return out;
}

}  // namespace fanocav

#pragma once

// Time-domain integration of the linearized equations of motion, used as an
// independent check of the frequency-domain sideband solver.

#include <complex>
#include <cstdint>
#include <vector>

#include "fanocav/model.hpp"

namespace fanocav {

struct State {
    double q = 0.0;
    double qdot = 0.0;
    std::complex<double> dc{0.0, 0.0};
};

struct TrajectoryConfig {
    double dt = 0.0;           // units of 1/omega_b
    double t_transient = 0.0;  // units of 1/omega_b
    int n_periods = 200;       // probe-beat periods in the measurement window
    State state0{};
    bool full_field = false;  // integrate c = c_s + dc with the pump term, subtract c_s afterwards
};

/// dt divides the beat period 2 pi/delta into a whole number of steps and
/// respects dt <= min(0.01/kappa, 0.01 * 2 pi, 0.01/|Delta|).
TrajectoryConfig default_config(const EffectiveParams& p, double delta);

void validate(const TrajectoryConfig& cfg, const EffectiveParams& p);

struct Trajectory {
    double dt = 0.0;
    std::vector<double> t;       // measurement window only
    std::vector<State> states;   // dc is always the fluctuation about c_s
};

/// RK4 over the transient, then records n_periods beat periods (inclusive of both ends).
/// Throws DivergenceError when the state grows past 1e9 times its natural scale.
Trajectory integrate(const EffectiveParams& p, double delta, const TrajectoryConfig& cfg);

/// (delta/(2 pi n)) * integral of dc(t) e^{+i delta t} over the first n whole periods.
std::complex<double> demodulate(const Trajectory& traj, double delta, int n_periods);

struct OracleComparison {
    std::complex<double> demodulated;
    std::complex<double> solver;
    double relative_error = 0.0;
};

OracleComparison compare_with_solver(const EffectiveParams& p, double delta, const TrajectoryConfig& cfg);
OracleComparison compare_with_solver(const EffectiveParams& p, double delta);

struct OracleCase {
    EffectiveParams params;
    double delta = 0.0;
};

/// Random stable parameter sets in omega_b units: kappa in [0.05, 0.5], g in [0, 2],
/// Delta and delta in [0.5, 1.5], gamma_b log-uniform in [1e-6, 1e-2], U_eff in [0.5, 2],
/// nu in [1, 100]. Unstable draws are rejected.
std::vector<OracleCase> draw_stable_cases(int n, std::uint64_t seed);

}  // namespace fanocav

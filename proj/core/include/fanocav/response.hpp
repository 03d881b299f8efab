#pragma once

// Steady-state sideband amplitudes and the probe observables
// derived from them (output quadratures, transmission, phase, group delay).
//
// Everything here works in normalized units (omega_b = 1). The probe-pump
// detuning `delta` is measured in units of omega_b as well.

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fanocav/model.hpp"

namespace fanocav {

using cplx = std::complex<double>;

/// solver:  direct solve of the linearized sideband equations
/// printed: the closed-form probe amplitude, evaluated verbatim, treated as
///          already normalized by the probe amplitude
enum class ResponseMode { solver, printed };

const char* to_string(ResponseMode m);
ResponseMode response_mode_from_string(const std::string& s);

struct ResponseOptions {
    ResponseMode mode = ResponseMode::solver;
    bool keep_counter_sideband = true;  // solver only
    double delay_step = 1e-4;           // central-difference step for tau_g, units of omega_b
};

struct SidebandSolution {
    cplx c_s;
    cplx c_minus;
    cplx c_plus;
    cplx q_minus;
    cplx q_plus;
    double delta = 0.0;
};

struct ProbeResponse {
    double delta_bar = 0.0;  // delta - omega_b
    double mu = 0.0;         // absorption quadrature
    double nu_out = 0.0;     // dispersion quadrature
    cplx t_p;
    double phase = 0.0;  // arg(t_p); unwrapped when produced by compute_spectrum
    double tau_g = 0.0;  // seconds
};

struct Quadratures {
    double mu = 0.0;
    double nu_out = 0.0;
};

cplx steady_state_cavity(const EffectiveParams& p);

/// Solves for (q_-, c_-, conj(c_+)) from the e^{-i delta t} components of the
/// linearized equations. q_+ is then recovered independently from the
/// e^{+i delta t} mechanical equation, so q_+ == conj(q_-) is a real check.
SidebandSolution solve_sidebands(const EffectiveParams& p, double delta,
                                 bool keep_counter_sideband = true);

cplx c_minus_printed(const EffectiveParams& p, double delta);

Quadratures output_quadratures(const SidebandSolution& sol, const EffectiveParams& p);
Quadratures output_quadratures_printed(cplx c_printed, const EffectiveParams& p);

cplx transmission(const SidebandSolution& sol, const EffectiveParams& p);

/// E_out = sqrt(2 kappa) c_- / eps_p, dispatched on the response mode.
cplx normalized_output(const EffectiveParams& p, double delta, const ResponseOptions& opt = {});

/// t_p = 1 - E_out.
cplx transmission_at(const EffectiveParams& p, double delta, const ResponseOptions& opt = {});

/// Unwrapped arg(t) over a strictly increasing grid.
std::vector<double> phase_profile(std::span<const double> delta, std::span<const cplx> t);

/// d arg(t_p) / d omega_p by central difference, returned in seconds.
double group_delay(const EffectiveParams& p, double delta, double h, const ResponseOptions& opt = {});

/// Same difference quotient in units of 1/omega_b.
double group_delay_normalized(const EffectiveParams& p, double delta, double h,
                              const ResponseOptions& opt = {});

struct StabilityReport {
    bool stable = false;
    std::array<cplx, 4> eigenvalues{};
    double max_real_part = 0.0;
    double slowest_decay = 0.0;  // min |Re lambda|
};

/// Eigenvalues of the homogeneous dynamics of (q, qdot, Re dc, Im dc).
StabilityReport stability_check(const EffectiveParams& p);

ProbeResponse evaluate(const EffectiveParams& p, double delta, const ResponseOptions& opt = {});

struct Spectrum {
    std::vector<double> delta;
    std::vector<std::optional<ProbeResponse>> points;  // nullopt marks a gap (pole)
    std::size_t gaps = 0;
};

/// Evaluates every grid point, records poles as gaps and unwraps the phase
/// across the valid points.
Spectrum compute_spectrum(const EffectiveParams& p, std::span<const double> delta,
                          const ResponseOptions& opt = {});

std::vector<double> linspace(double lo, double hi, std::size_t n);
std::vector<double> logspace(double lo, double hi, std::size_t n);

}  // namespace fanocav

#include "fanocav/response.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "fanocav/errors.hpp"

namespace fanocav {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kSingularTol = 1e-14;
constexpr double kPhaseFloor = 1e-14;

}  // namespace

const char* to_string(ResponseMode m) { return m == ResponseMode::solver ? "solver" : "printed"; }

ResponseMode response_mode_from_string(const std::string& s) {
    if (s == "solver") return ResponseMode::solver;
    if (s == "printed") return ResponseMode::printed;
    throw InvalidParameter(fmt::format("unknown response mode '{}' (expected solver or printed)", s));
}

cplx steady_state_cavity(const EffectiveParams& p) {
    if (!(p.kappa > 0.0)) throw InvalidParameter("kappa must be > 0");
    return p.Omega_l / cplx(p.kappa, p.Delta);
}

SidebandSolution solve_sidebands(const EffectiveParams& p, double delta, bool keep_counter_sideband) {
    if (!(p.kappa > 0.0)) throw InvalidParameter("kappa must be > 0");

    const double w2 = p.omega_b * p.omega_b;
    const double G = p.mechanical_drive();
    const cplx mech = w2 - delta * delta - I * delta * p.gamma_b;
    const cplx cav_minus(p.kappa, p.Delta - delta);
    const cplx cav_plus_conj(p.kappa, -(p.Delta + delta));

    SidebandSolution s;
    s.delta = delta;
    s.c_s = steady_state_cavity(p);

    if (keep_counter_sideband) {
        Eigen::Matrix3cd A;
        A << mech, G, G,
             I * p.g, cav_minus, 0.0,
             -I * p.g, 0.0, cav_plus_conj;
        const Eigen::Vector3cd rhs(0.0, p.eps_p, 0.0);
        const double scale = A.norm();
        if (std::abs(A.determinant()) < kSingularTol * scale * scale * scale)
            throw DegenerateResponse(
                fmt::format("singular sideband system at delta = {:.9g}", delta), delta);
        const Eigen::Vector3cd x = A.fullPivLu().solve(rhs);
        s.q_minus = x(0);
        s.c_minus = x(1);
        s.c_plus = std::conj(x(2));
    } else {
        Eigen::Matrix2cd A;
        A << mech, G,
             I * p.g, cav_minus;
        const Eigen::Vector2cd rhs(0.0, p.eps_p);
        const double scale = A.norm();
        if (std::abs(A.determinant()) < kSingularTol * scale * scale)
            throw DegenerateResponse(
                fmt::format("singular sideband system at delta = {:.9g}", delta), delta);
        const Eigen::Vector2cd x = A.fullPivLu().solve(rhs);
        s.q_minus = x(0);
        s.c_minus = x(1);
        s.c_plus = 0.0;
    }

    // e^{+i delta t} component of the mechanical equation.
    const cplx mech_plus = w2 - delta * delta + I * delta * p.gamma_b;
    if (std::abs(mech_plus) > 0.0)
        s.q_plus = -G * (s.c_plus + std::conj(s.c_minus)) / mech_plus;
    else
        s.q_plus = std::conj(s.q_minus);
    return s;
}

cplx c_minus_printed(const EffectiveParams& p, double delta) {
    const double w2 = p.omega_b * p.omega_b;
    const double coupling = p.g * (p.nu + p.U_eff);
    const cplx mech = delta * delta - I * delta * p.gamma_b - w2;
    const cplx numerator = cplx(p.kappa, p.Delta - delta) * mech + I * coupling;
    const cplx first = (p.kappa * p.kappa + p.Delta * p.Delta - delta * (delta + I * p.kappa)) * mech;
    const cplx second = 2.0 * p.Delta * coupling;
    const cplx denominator = first + second;
    if (std::abs(denominator) <= kSingularTol * (std::abs(first) + std::abs(second)))
        throw PoleError(fmt::format("printed probe amplitude has a pole at delta = {:.9g}", delta), delta);
    return numerator / denominator;
}

Quadratures output_quadratures(const SidebandSolution& sol, const EffectiveParams& p) {
    if (p.eps_p == 0.0) throw DivisionByZero("probe amplitude eps_p is zero");
    const cplx e = std::sqrt(2.0 * p.kappa) * sol.c_minus / p.eps_p;
    return {e.real(), e.imag()};
}

Quadratures output_quadratures_printed(cplx c_printed, const EffectiveParams& p) {
    const cplx e = std::sqrt(2.0 * p.kappa) * c_printed;
    return {e.real(), e.imag()};
}

cplx transmission(const SidebandSolution& sol, const EffectiveParams& p) {
    if (p.eps_p == 0.0) throw DivisionByZero("probe amplitude eps_p is zero");
    return 1.0 - std::sqrt(2.0 * p.kappa) * sol.c_minus / p.eps_p;
}

cplx normalized_output(const EffectiveParams& p, double delta, const ResponseOptions& opt) {
    if (opt.mode == ResponseMode::printed)
        return std::sqrt(2.0 * p.kappa) * c_minus_printed(p, delta);
    if (p.eps_p == 0.0) throw DivisionByZero("probe amplitude eps_p is zero");
    const auto sol = solve_sidebands(p, delta, opt.keep_counter_sideband);
    return std::sqrt(2.0 * p.kappa) * sol.c_minus / p.eps_p;
}

cplx transmission_at(const EffectiveParams& p, double delta, const ResponseOptions& opt) {
    return 1.0 - normalized_output(p, delta, opt);
}

std::vector<double> phase_profile(std::span<const double> delta, std::span<const cplx> t) {
    if (delta.size() != t.size()) throw InvalidInput("phase_profile: grid and data sizes differ");
    for (std::size_t i = 1; i < delta.size(); ++i)
        if (!(delta[i] > delta[i - 1])) throw InvalidInput("phase_profile: grid must be strictly increasing");

    std::vector<double> phase(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (std::abs(t[i]) < kPhaseFloor)
            throw PhaseUndefined(fmt::format("phase undefined at grid point {} (|t| < 1e-14)", i), i);
        phase[i] = std::arg(t[i]);
        if (i > 0) {
            // arg of the ratio is the principal-value increment
            phase[i] = phase[i - 1] + std::arg(t[i] * std::conj(t[i - 1]));
        }
    }
    return phase;
}

double group_delay_normalized(const EffectiveParams& p, double delta, double h, const ResponseOptions& opt) {
    if (!(h > 0.0)) throw InvalidParameter("group delay step must be > 0");
    const cplx lo = transmission_at(p, delta - h, opt);
    const cplx hi = transmission_at(p, delta + h, opt);
    if (std::abs(lo) < kPhaseFloor) throw PhaseUndefined("phase undefined at delta - h", 0);
    if (std::abs(hi) < kPhaseFloor) throw PhaseUndefined("phase undefined at delta + h", 1);
    return std::arg(hi * std::conj(lo)) / (2.0 * h);
}

double group_delay(const EffectiveParams& p, double delta, double h, const ResponseOptions& opt) {
    return p.to_seconds(group_delay_normalized(p, delta, h, opt));
}

StabilityReport stability_check(const EffectiveParams& p) {
    const double G = p.mechanical_drive();
    Eigen::Matrix4d A;
    // state (q, qdot, Re dc, Im dc)
    A << 0.0, 1.0, 0.0, 0.0,
         -p.omega_b * p.omega_b, -p.gamma_b, -2.0 * G, 0.0,
         0.0, 0.0, -p.kappa, p.Delta,
         -p.g, 0.0, -p.Delta, -p.kappa;

    Eigen::EigenSolver<Eigen::Matrix4d> solver(A, false);
    StabilityReport r;
    const auto ev = solver.eigenvalues();
    r.max_real_part = -std::numeric_limits<double>::infinity();
    r.slowest_decay = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        r.eigenvalues[static_cast<std::size_t>(i)] = ev(i);
        r.max_real_part = std::max(r.max_real_part, ev(i).real());
        r.slowest_decay = std::min(r.slowest_decay, std::abs(ev(i).real()));
    }
    r.stable = solver.info() == Eigen::Success && r.max_real_part < 0.0;
    return r;
}

ProbeResponse evaluate(const EffectiveParams& p, double delta, const ResponseOptions& opt) {
    const cplx e = normalized_output(p, delta, opt);
    ProbeResponse r;
    r.delta_bar = delta - p.omega_b;
    r.mu = e.real();
    r.nu_out = e.imag();
    r.t_p = 1.0 - e;
    if (std::abs(r.t_p) < kPhaseFloor) throw PhaseUndefined("phase undefined: |t_p| < 1e-14", 0);
    r.phase = std::arg(r.t_p);
    r.tau_g = group_delay(p, delta, opt.delay_step, opt);
    return r;
}

Spectrum compute_spectrum(const EffectiveParams& p, std::span<const double> delta, const ResponseOptions& opt) {
    for (std::size_t i = 1; i < delta.size(); ++i)
        if (!(delta[i] > delta[i - 1])) throw InvalidInput("spectrum grid must be strictly increasing");

    Spectrum s;
    s.delta.assign(delta.begin(), delta.end());
    s.points.resize(delta.size());
    std::optional<cplx> previous;
    double previous_phase = 0.0;
    for (std::size_t i = 0; i < delta.size(); ++i) {
        try {
            ProbeResponse r = evaluate(p, delta[i], opt);
            if (previous) r.phase = previous_phase + std::arg(r.t_p * std::conj(*previous));
            previous = r.t_p;
            previous_phase = r.phase;
            s.points[i] = r;
        } catch (const PoleError&) {
            ++s.gaps;
        } catch (const DegenerateResponse&) {
            ++s.gaps;
        } catch (const PhaseUndefined&) {
            ++s.gaps;
        }
    }
    return s;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    if (n > 1) v.back() = hi;
    return v;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > 0.0)) throw InvalidInput("logspace bounds must be > 0");
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

}  // namespace fanocav

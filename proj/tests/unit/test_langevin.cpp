#include <doctest.h>

#include <cmath>

#include "../oracles/closed_form.hpp"
#include "common.hpp"
#include "fanocav/errors.hpp"
#include "fanocav/langevin.hpp"
#include "fanocav/response.hpp"

using namespace fanocav;
using testutil::fig2;

namespace {

Trajectory tone(cplx A, cplx B, double delta, double dt, int periods) {
    Trajectory t;
    t.dt = dt;
    const auto n = static_cast<std::size_t>(std::llround(periods * kTwoPi / delta / dt));
    for (std::size_t i = 0; i <= n; ++i) {
        const double time = 3.0 + static_cast<double>(i) * dt;
        State s;
        s.dc = A * std::polar(1.0, -delta * time) + B * std::polar(1.0, delta * time);
        t.t.push_back(time);
        t.states.push_back(s);
    }
    return t;
}

EffectiveParams small_case() {
    EffectiveParams p = fig2(0.9, 0.05);
    p.kappa = 0.3;
    p.gamma_b = 1e-2;
    p.nu = 5.0;
    return p;
}

}  // namespace

TEST_SUITE("langevin") {

TEST_CASE("pure tone demodulates exactly") {
    const double delta = 1.1;
    const double dt = kTwoPi / delta / 400;
    const cplx A{0.3, -1.2};
    CHECK(std::abs(demodulate(tone(A, 0.0, delta, dt, 10), delta, 10) - A) < 1e-8);
}

TEST_CASE("counter-rotating term integrates out") {
    const double delta = 0.8;
    const double dt = kTwoPi / delta / 400;
    const cplx A{1.0, 0.5}, B{-2.0, 0.7};
    CHECK(std::abs(demodulate(tone(A, B, delta, dt, 10), delta, 10) - A) < 1e-8);
}

TEST_CASE("short window is rejected") {
    const double delta = 1.0;
    const auto t = tone(1.0, 0.0, delta, kTwoPi / 400, 4);
    CHECK_THROWS_AS(demodulate(t, delta, 5), InvalidWindow);
    CHECK_THROWS_AS(demodulate(t, delta, 0), InvalidWindow);
}

TEST_CASE("default configuration resolves the dynamics") {
    const auto p = fig2(1.2, 0.01);
    const auto cfg = default_config(p, 0.9);
    CHECK(cfg.dt <= 0.01 / p.kappa);
    CHECK(cfg.dt <= 0.01 / p.Delta);
    const double per_period = kTwoPi / 0.9 / cfg.dt;
    CHECK(per_period == doctest::Approx(std::round(per_period)));
    CHECK(cfg.n_periods == 200);
    CHECK_NOTHROW(validate(cfg, p));
    auto bad = cfg;
    bad.dt *= 2.0;
    CHECK_THROWS_AS(validate(bad, p), InvalidParameter);
}

TEST_CASE("unforced system decays") {
    auto p = small_case();
    p.eps_p = 0.0;
    auto cfg = default_config(p, 1.0);
    cfg.state0.q = 1.0;
    cfg.state0.dc = {0.5, 0.5};
    cfg.n_periods = 5;
    const auto traj = integrate(p, 1.0, cfg);
    CHECK(std::abs(traj.states.back().dc) < 1e-6);
}

TEST_CASE("energy of the free oscillator never grows") {
    auto p = small_case();
    p.eps_p = 0.0;
    p.g = 0.0;
    auto cfg = default_config(p, 1.0);
    cfg.t_transient = 0.0;
    cfg.state0.q = 1.0;
    cfg.n_periods = 20;
    const auto traj = integrate(p, 1.0, cfg);
    double prev = 1e300;
    for (std::size_t i = 0; i < traj.states.size(); i += 50) {
        const auto& s = traj.states[i];
        const double E = 0.5 * (s.qdot * s.qdot + s.q * s.q);
        CHECK(E <= prev * (1.0 + 1e-9));
        prev = E;
    }
}

TEST_CASE("decoupled cavity follows the driven filter") {
    auto p = small_case();
    p.g = 0.0;
    const double delta = 0.7;
    auto cfg = default_config(p, delta);
    cfg.n_periods = 5;
    const auto traj = integrate(p, delta, cfg);
    const cplx amp = oracle::bare_cavity(p, delta);
    for (std::size_t i = 0; i < traj.t.size(); i += 97) {
        const cplx expect = amp * std::polar(1.0, -delta * traj.t[i]);
        CHECK(std::abs(traj.states[i].dc - expect) < 1e-6 * std::abs(amp));
    }
}

TEST_CASE("result does not depend on the initial state") {
    const auto p = small_case();
    const double delta = 1.05;
    auto cfg = default_config(p, delta);
    cfg.n_periods = 20;
    const cplx a = demodulate(integrate(p, delta, cfg), delta, cfg.n_periods);
    cfg.state0.q = 3.0;
    cfg.state0.qdot = -1.0;
    cfg.state0.dc = {2.0, -4.0};
    const cplx b = demodulate(integrate(p, delta, cfg), delta, cfg.n_periods);
    CHECK(std::abs(a - b) < 1e-4 * std::abs(a));
}

TEST_CASE("full-field integration matches the fluctuation equations") {
    auto p = small_case();
    p.Omega_l = 0.4;
    const double delta = 0.95;
    auto cfg = default_config(p, delta);
    cfg.n_periods = 20;
    const cplx a = demodulate(integrate(p, delta, cfg), delta, cfg.n_periods);
    cfg.full_field = true;
    const cplx b = demodulate(integrate(p, delta, cfg), delta, cfg.n_periods);
    CHECK(std::abs(a - b) < 1e-6 * std::abs(a));
}

TEST_CASE("oracle agrees with the solver") {
    const auto p = small_case();
    for (double delta : {0.8, 1.0, 1.3}) {
        const auto c = compare_with_solver(p, delta);
        CHECK(c.relative_error < 1e-4);
    }
}

TEST_CASE("unstable dynamics diverge") {
    auto p = fig2(-1.0, 1.0);
    p.gamma_b = 1e-3;
    p.nu = 10.0;
    REQUIRE_FALSE(stability_check(p).stable);
    auto cfg = default_config(p, 1.0);
    cfg.t_transient = 1e5;
    CHECK_THROWS_AS(integrate(p, 1.0, cfg), DivergenceError);
}

TEST_CASE("random stable draws are reproducible") {
    const auto a = draw_stable_cases(5, 99);
    const auto b = draw_stable_cases(5, 99);
    REQUIRE(a.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(a[i].params.kappa == b[i].params.kappa);
        CHECK(a[i].delta == b[i].delta);
        CHECK(stability_check(a[i].params).stable);
    }
}

}

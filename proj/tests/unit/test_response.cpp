#include <doctest.h>

#include <cmath>
#include <vector>

#include "../oracles/closed_form.hpp"
#include "common.hpp"
#include "fanocav/errors.hpp"
#include "fanocav/response.hpp"

using namespace fanocav;
using testutil::fig2;

TEST_SUITE("response") {

TEST_CASE("sideband solve matches scalar elimination") {
    for (double Delta : {0.7, 0.8, 1.0, 1.2})
        for (double g : {0.0, 0.01, 0.1})
            for (double d : {0.5, 0.93, 1.0, 1.07, 1.5}) {
                const auto p = fig2(Delta, g);
                const auto s = solve_sidebands(p, d);
                const auto o = oracle::eliminate(p, d);
                CHECK(std::abs(s.c_minus - o.c_minus) <= 1e-10 * std::abs(o.c_minus));
                CHECK(std::abs(s.q_minus - o.q_minus) <= 1e-10 * std::abs(o.q_minus) + 1e-300);
                CHECK(std::abs(std::conj(s.c_plus) - o.c_plus_conj) <= 1e-10 * std::abs(o.c_minus));

                const auto s2 = solve_sidebands(p, d, false);
                const auto o2 = oracle::eliminate(p, d, false);
                // absolute floor on the scale eps_p/kappa for near-cancelling points
                CHECK(std::abs(s2.c_minus - o2.c_minus) <= 1e-10 * std::abs(o2.c_minus) + 1e-14 * p.eps_p / p.kappa);
                CHECK(s2.c_plus == cplx{});
            }
}

TEST_CASE("g -> 0 gives the bare cavity Lorentzian") {
    auto p = fig2(0.8, 0.0);
    for (double d : linspace(0.5, 1.5, 41)) {
        const cplx c = solve_sidebands(p, d).c_minus;
        const cplx ref = oracle::bare_cavity(p, d);
        CHECK(std::abs(c - ref) <= 1e-12 * std::abs(ref));
    }
    p.g = 1e-9;
    const cplx c = solve_sidebands(p, 0.9).c_minus;
    CHECK(std::abs(c - oracle::bare_cavity(p, 0.9)) <= 1e-6 * std::abs(c));
}

TEST_CASE("amplitudes are linear in eps_p") {
    auto p = fig2(0.8, 0.01);
    const auto a = solve_sidebands(p, 0.95);
    p.eps_p = 3.7;
    const auto b = solve_sidebands(p, 0.95);
    CHECK(std::abs(b.c_minus - 3.7 * a.c_minus) <= 1e-12 * std::abs(b.c_minus));
    CHECK(std::abs(b.q_minus - 3.7 * a.q_minus) <= 1e-12 * std::abs(b.q_minus));
    CHECK(std::abs(b.c_plus - 3.7 * a.c_plus) <= 1e-12 * std::abs(b.c_plus));
    // normalized output does not depend on the probe amplitude
    CHECK(std::abs(normalized_output(p, 0.95) - std::sqrt(0.2) * a.c_minus) <= 1e-12);
}

TEST_CASE("q_plus is the conjugate of q_minus") {
    for (double Delta : {0.6, 1.0, 1.3})
        for (double d : {0.6, 0.99, 1.2}) {
            const auto s = solve_sidebands(fig2(Delta, 0.05), d);
            CHECK(std::abs(s.q_plus - std::conj(s.q_minus)) <= 1e-10 * std::abs(s.q_minus));
        }
}

TEST_CASE("printed closed form") {
    const auto p = fig2(0.8, 0.1);
    const double d = 0.9;
    // verbatim expression, omega_b = 1
    const cplx m = d * d - oracle::I * d * p.gamma_b - 1.0;
    const double Gn = p.g * (p.nu + p.U_eff);
    const cplx num = cplx{p.kappa, p.Delta - d} * m + oracle::I * Gn;
    const cplx den = (p.kappa * p.kappa + p.Delta * p.Delta - d * cplx{d, p.kappa}) * m + 2.0 * p.Delta * Gn;
    CHECK(std::abs(c_minus_printed(p, d) - num / den) <= 1e-14 * std::abs(num / den));

    ResponseOptions printed;
    printed.mode = ResponseMode::printed;
    CHECK(std::abs(normalized_output(p, d, printed) - std::sqrt(2 * p.kappa) * num / den) < 1e-13);
}

TEST_CASE("printed form differs from the solver at g = 0") {
    const auto p = fig2(0.8, 0.0);
    ResponseOptions printed;
    printed.mode = ResponseMode::printed;
    // denominators differ by the kappa*delta cross term, so the two modes disagree
    const cplx a = normalized_output(p, 0.8);
    const cplx b = normalized_output(p, 0.8, printed);
    CHECK(std::abs(a - b) > 1e-3 * std::abs(a));
}

TEST_CASE("transmission and quadratures") {
    const auto p = fig2(1.0, 0.02);
    const auto r = evaluate(p, 1.01);
    const cplx E = normalized_output(p, 1.01);
    CHECK(r.mu == doctest::Approx(E.real()));
    CHECK(r.nu_out == doctest::Approx(E.imag()));
    CHECK(std::abs(r.t_p - (1.0 - E)) < 1e-15);
    CHECK(r.delta_bar == doctest::Approx(0.01));
    CHECK(r.phase == doctest::Approx(std::arg(r.t_p)));
}

TEST_CASE("phase unwrapping") {
    std::vector<double> d;
    std::vector<cplx> t;
    for (int i = 0; i < 50; ++i) {
        d.push_back(i);
        t.push_back(std::polar(1.0, 0.3 * i));
    }
    const auto ph = phase_profile(d, t);
    for (int i = 0; i < 50; ++i) CHECK(ph[i] == doctest::Approx(0.3 * i));
    t[3] = 0.0;
    CHECK_THROWS_AS(phase_profile(d, t), PhaseUndefined);
    d[4] = d[3];
    CHECK_THROWS_AS(phase_profile(d, std::vector<cplx>(50, 1.0)), InvalidInput);
}

TEST_CASE("group delay converges at second order") {
    const auto p = fig2(1.0, 0.02);
    const double h = 1e-4;
    const double t1 = group_delay_normalized(p, 1.0, h);
    const double t2 = group_delay_normalized(p, 1.0, h / 2);
    const double richardson = (4.0 * t2 - t1) / 3.0;
    CHECK(std::abs(richardson - t1) < 1e-3 * std::abs(t1));
    CHECK(group_delay(p, 1.0, h) == doctest::Approx(t1 / p.omega_b_si));
    CHECK_THROWS_AS(group_delay_normalized(p, 1.0, 0.0), InvalidParameter);
}

TEST_CASE("bare cavity group delay") {
    auto p = fig2(1.0, 0.0);
    const double t = group_delay_normalized(p, 1.0, 1e-5);
    // t_p = (a + i x)/(kappa + i x) with a = kappa - sqrt(2 kappa), x = Delta - delta
    const double a = p.kappa - std::sqrt(2.0 * p.kappa);
    CHECK(t == doctest::Approx(1.0 / p.kappa - 1.0 / a).epsilon(1e-6));
}

TEST_CASE("stability agrees with Routh-Hurwitz") {
    std::size_t unstable = 0;
    for (double Delta : {-1.0, -0.3, 0.5, 0.8, 1.0, 1.2})
        for (double g : {0.0, 0.001, 0.01, 0.05, 0.1, 1.0}) {
            const auto p = fig2(Delta, g);
            const auto r = stability_check(p);
            CHECK(r.stable == oracle::routh_hurwitz_stable(p));
            unstable += !r.stable;
        }
    CHECK(unstable > 0);
}

TEST_CASE("decoupled system is stable") {
    const auto r = stability_check(fig2(0.8, 0.0));
    CHECK(r.stable);
    CHECK(r.max_real_part < 0.0);
}

TEST_CASE("red-detuned strong coupling is unstable") {
    // effective spring 2 Delta g (nu + U_eff) overwhelms omega_b^2 with Delta < 0
    auto p = fig2(-1.0, 1.0);
    p.gamma_b = 1e-6;
    CHECK_FALSE(stability_check(p).stable);
}

TEST_CASE("spectrum records poles as gaps") {
    EffectiveParams p = fig2(1.0, 0.0);
    p.kappa = 0.1;
    ResponseOptions printed;
    printed.mode = ResponseMode::printed;
    // the printed denominator vanishes at delta = omega_b when gamma_b = 0 and g = 0
    p.gamma_b = 0.0;
    const std::vector<double> grid{0.8, 0.9, 1.0, 1.1, 1.2};
    const auto s = compute_spectrum(p, grid, printed);
    CHECK(s.gaps == 1);
    CHECK_FALSE(s.points[2].has_value());
    CHECK(s.points[0].has_value());
}

TEST_CASE("spectrum phase is continuous") {
    const auto p = fig2(1.0, 0.02);
    const auto s = compute_spectrum(p, linspace(0.5, 1.5, 2001));
    REQUIRE(s.gaps == 0);
    for (std::size_t i = 1; i < s.points.size(); ++i)
        CHECK(std::abs(s.points[i]->phase - s.points[i - 1]->phase) < 1.0);
}

TEST_CASE("grids") {
    const auto l = linspace(0.5, 1.5, 3);
    CHECK(l == std::vector<double>{0.5, 1.0, 1.5});
    const auto g = logspace(1e-4, 1e-2, 3);
    CHECK(g[1] == doctest::Approx(1e-3));
    CHECK(g.back() == 1e-2);
}

TEST_CASE("mode names") {
    CHECK(response_mode_from_string("printed") == ResponseMode::printed);
    CHECK(std::string(to_string(ResponseMode::solver)) == "solver");
    CHECK_THROWS(response_mode_from_string("exact"));
}

}

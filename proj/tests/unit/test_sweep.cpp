#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "fanocav/config.hpp"
#include "fanocav/errors.hpp"
#include "fanocav/io.hpp"
#include "fanocav/presets.hpp"
#include "fanocav/sweep.hpp"

using namespace fanocav;
using testutil::fig2;

namespace {

SystemParams fig2_si(double ratio, double g) {
    SystemParams p;
    p.omega_b = from_hz(1e4);
    p.kappa = 0.1 * p.omega_b;
    p.gamma_b = 7.5e-7 * p.omega_b;
    p.detuning_ratio = ratio;
    p.g = g * p.omega_b;
    p.U_eff = p.omega_b;
    p.nu = 100.0 * p.omega_b;
    return p;
}

SweepSpec map_spec() {
    SweepSpec s;
    s.base = fig2_si(0.8, 0.01);
    s.axis1 = {"delta", 0.9, 1.1, 31, Spacing::linear, {}};
    s.axis2 = Axis{"Delta", 0.5, 1.5, 11, Spacing::linear, {}};
    return s;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("axis values") {
    Axis a{"P_l", 1e-4, 1e-2, 3, Spacing::log, {}};
    CHECK(a.values()[1] == doctest::Approx(1e-3));
    a.explicit_values = {5.0, 20.0, 50.0};
    CHECK(a.values() == std::vector<double>{5.0, 20.0, 50.0});
    CHECK_THROWS_AS((Axis{"bogus", 0, 1, 3, Spacing::linear, {}}).validate(), InvalidSpec);
    CHECK_THROWS_AS((Axis{"g", 0, 1, 1, Spacing::linear, {}}).validate(), InvalidSpec);
    CHECK_THROWS_AS((Axis{"g", 0, 1, 3, Spacing::log, {}}).validate(), InvalidSpec);
}

TEST_CASE("unknown parameter lists the valid names") {
    SweepSpec s = map_spec();
    s.axis1.parameter = "temperature";
    try {
        run_sweep(s);
        FAIL("expected InvalidSpec");
    } catch (const InvalidSpec& e) {
        CHECK(std::string(e.what()).find("damping_override") != std::string::npos);
    }
}

TEST_CASE("map values match direct evaluation") {
    const SweepSpec s = map_spec();
    const auto r = run_sweep(s);
    REQUIRE(r.rows() == 11);
    REQUIRE(r.cols() == 31);
    for (std::size_t row = 0; row < r.rows(); row += 3)
        for (std::size_t col = 0; col < r.cols(); col += 7) {
            const auto p = fig2(r.axis2[row], 0.01);
            if (!r.stable[row * r.cols() + col]) {
                CHECK_FALSE(r.at(row, col).has_value());
                continue;
            }
            REQUIRE(r.at(row, col).has_value());
            CHECK(*r.at(row, col) == doctest::Approx(evaluate(p, r.axis1[col]).mu).epsilon(1e-12));
        }
}

TEST_CASE("unstable points are gaps, never numbers") {
    SweepSpec s = map_spec();
    s.base = fig2_si(0.8, 1.0);
    const auto r = run_sweep(s);
    CHECK(r.unstable > 0);
    for (std::size_t i = 0; i < r.values.size(); ++i)
        if (!r.stable[i]) CHECK_FALSE(r.values[i].has_value());
    CHECK(r.gaps >= r.unstable);

    s.stability = StabilityPolicy::report;
    const auto k = run_sweep(s);
    CHECK(k.unstable == r.unstable);
    CHECK(k.gaps < r.gaps);
}

TEST_CASE("constant axis gives identical columns") {
    SweepSpec s = map_spec();
    s.axis1 = {"g", 0.01, 0.01, 2, Spacing::linear, {}};
    s.probe_delta = 0.97;
    const auto r = run_sweep(s);
    for (std::size_t row = 0; row < r.rows(); ++row) CHECK(r.at(row, 0) == r.at(row, 1));
}

TEST_CASE("output does not depend on thread count") {
    SweepSpec s = map_spec();
    s.threads = 1;
    const std::string a = grid_csv(run_sweep(s));
    s.threads = 7;
    const std::string b = grid_csv(run_sweep(s));
    CHECK(a == b);
    CHECK(grid_csv(run_sweep(s)) == b);
}

TEST_CASE("parameter application") {
    SystemParams p = fig2_si(1.0, 0.1);
    double delta = 1.0;
    std::optional<double> Om, eps;
    apply_parameter(p, "kappa", 0.2, delta, Om, eps);
    CHECK(p.kappa == doctest::Approx(0.2 * p.omega_b));
    apply_parameter(p, "delta", 0.9, delta, Om, eps);
    CHECK(delta == 0.9);
    p.coupling_per_photon = 1.0;
    apply_parameter(p, "g", 0.3, delta, Om, eps);
    CHECK_FALSE(p.coupling_per_photon);
    apply_parameter(p, "eps_p", 2.0, delta, Om, eps);
    CHECK(eps == 2.0);
    CHECK_THROWS_AS(apply_parameter(p, "nope", 1.0, delta, Om, eps), InvalidSpec);
}

TEST_CASE("flip verdicts") {
    const auto grid = linspace(0.9, 1.1, 2001);
    const auto base = fig2(1.0, 0.01);
    const auto m08 = absorption(base, 0.8, grid);
    const auto m12 = absorption(base, 1.2, grid);
    const auto m09 = absorption(base, 0.9, grid);
    CHECK(asymmetry_flip_report(grid, m08, grid, m12).verdict == FlipVerdict::flipped);
    CHECK(asymmetry_flip_report(grid, m08, grid, m09).verdict == FlipVerdict::not_flipped);
    CHECK(asymmetry_flip_report(grid, m08, grid, m08).verdict == FlipVerdict::not_flipped);

    const std::vector<double> flat(grid.size(), 1.0);
    const auto r = asymmetry_flip_report(grid, flat, grid, m08);
    CHECK(r.verdict == FlipVerdict::indeterminate);
    CHECK_FALSE(r.reason.empty());
}

TEST_CASE("delay tends to the bare cavity value as the pump vanishes") {
    SystemParams p = fig2_si(1.0, 0.0);
    p.g = 0.0;
    p.coupling_per_photon = calibrate_coupling_per_photon(p, 0.1 * p.omega_b, 1e-3);
    const std::vector<double> P{1e-12, 1e-3};
    const auto rows = delay_curve(p, P);
    const double k = 0.1;
    const double bare = (1.0 / k - 1.0 / (k - std::sqrt(2.0 * k))) / p.omega_b;
    CHECK(rows[0].tau_g == doctest::Approx(bare).epsilon(1e-6));
    CHECK(rows[1].g == doctest::Approx(0.1));
    CHECK_THROWS_AS(delay_curve(p, std::vector<double>{0.0}), InvalidSpec);
}

TEST_CASE("fig2a preset holds six detunings") {
    const RunSettings s = preset_config("fig2a").build();
    REQUIRE(s.family);
    CHECK(s.family->parameter == "Delta");
    CHECK(s.family->values == std::vector<double>{0.7, 0.8, 0.9, 1.0, 1.1, 1.2});
    CHECK(s.points == 2001);
}

TEST_CASE("names round trip") {
    for (auto o : {Observable::mu, Observable::nu_out, Observable::t_abs2, Observable::phase, Observable::tau_g})
        CHECK(observable_from_string(to_string(o)) == o);
    CHECK_THROWS_AS(observable_from_string("x"), InvalidSpec);
    CHECK(stability_policy_from_string("report") == StabilityPolicy::report);
    CHECK(spacing_from_string("log") == Spacing::log);
}

}

TEST_SUITE("presets") {

TEST_CASE("fig2 parameter sets are stable") {
    for (const char* name : {"fig2a", "fig2b"}) {
        const RunSettings s = preset_config(name).build();
        for (double D : s.family->values) {
            SystemParams p = s.params;
            double delta = 1.0;
            std::optional<double> Om, eps;
            apply_parameter(p, "Delta", D, delta, Om, eps);
            const auto r = stability_check(normalize(p));
            CHECK_MESSAGE(r.stable, std::string(name) << " Delta = " << D << " max Re lambda = " << r.max_real_part);
        }
    }
}

}

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fanocav/detail/parallel.hpp"
#include "fanocav/fano.hpp"
#include "fanocav/model.hpp"
#include "fanocav/response.hpp"

namespace fanocav {

enum class Observable { mu, nu_out, t_abs2, phase, tau_g };
const char* to_string(Observable o);
Observable observable_from_string(const std::string& s);

enum class Spacing { linear, log };
const char* to_string(Spacing s);
Spacing spacing_from_string(const std::string& s);

/// unstable grid points: gap (empty cell) or report (value kept, flagged in the mask)
enum class StabilityPolicy { gap, report };
const char* to_string(StabilityPolicy s);
StabilityPolicy stability_policy_from_string(const std::string& s);

/// Sweepable parameter names. Rates are in units of the reference omega_b
/// (SystemParams::omega_b), "Delta" sets the ratio Delta/omega_b, "delta" is the
/// probe detuning in units of omega_b, P_l and P_p are in W. Omega_l and eps_p
/// act on the normalized parameters.
const std::vector<std::string>& sweep_parameter_names();

struct Axis {
    std::string parameter;
    double lower = 0.0;
    double upper = 0.0;
    std::size_t points = 2;
    Spacing spacing = Spacing::linear;
    std::vector<double> explicit_values;  // overrides lower/upper/points when non-empty

    [[nodiscard]] std::vector<double> values() const;
    void validate() const;
};

struct SweepSpec {
    std::string name = "custom";
    SystemParams base;
    Axis axis1;
    std::optional<Axis> axis2;
    Observable observable = Observable::mu;
    ResponseOptions response;
    StabilityPolicy stability = StabilityPolicy::gap;
    double probe_delta = 1.0;  // used unless an axis sweeps "delta"
    unsigned threads = 0;      // 0 = hardware concurrency
};

struct SweepResult {
    std::vector<double> axis1;
    std::vector<double> axis2;                  // empty for 1D sweeps
    std::vector<std::optional<double>> values;  // row-major, axis1 along a row
    std::vector<bool> stable;                   // same layout
    std::size_t unstable = 0;
    std::size_t gaps = 0;
    SystemParams resolved_base;
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t rows() const { return axis2.empty() ? 1 : axis2.size(); }
    [[nodiscard]] std::size_t cols() const { return axis1.size(); }
    [[nodiscard]] const std::optional<double>& at(std::size_t row, std::size_t col) const {
        return values[row * axis1.size() + col];
    }
};

/// Applies one named parameter value. `probe_delta` receives "delta".
void apply_parameter(SystemParams& p, const std::string& name, double value, double& probe_delta,
                     std::optional<double>& Omega_l, std::optional<double>& eps_p);

/// Observable in output units: tau_g in microseconds, phase in radians.
double observable_value(const ProbeResponse& r, Observable o);

SweepResult run_sweep(const SweepSpec& spec);

enum class FlipVerdict { flipped, not_flipped, indeterminate };
const char* to_string(FlipVerdict v);

struct FlipReport {
    FlipVerdict verdict = FlipVerdict::indeterminate;
    Landmarks a;
    Landmarks b;
    std::string reason;
};

/// Compares sign(delta_peak - delta_zero) of two absorption spectra.
FlipReport asymmetry_flip_report(std::span<const double> delta_a, std::span<const double> mu_a,
                                 std::span<const double> delta_b, std::span<const double> mu_b);

/// Absorption spectrum mu(delta) of `p` with Delta replaced, over `grid`.
std::vector<double> absorption(EffectiveParams p, double Delta, std::span<const double> grid,
                               const ResponseOptions& opt = {});

struct DelayRow {
    double P_l = 0.0;
    double tau_g = 0.0;  // seconds
    double g = 0.0;      // normalized coupling at this pump power
    bool stable = false;
};

/// tau_g at delta = probe_delta (units of omega_b) for each pump power.
std::vector<DelayRow> delay_curve(const SystemParams& base, std::span<const double> P_l,
                                  double probe_delta = 1.0, const ResponseOptions& opt = {});

}  // namespace fanocav


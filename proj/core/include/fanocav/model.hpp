#pragma once

// Physical inputs of the BEC-loaded cavity and their reduction to
// the normalized effective parameters used by every response formula.

#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace fanocav {

inline constexpr double kHbar = 1.054571817e-34;  // J s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Angular frequency (rad/s) of an ordinary frequency in Hz.
constexpr double from_hz(double f) { return kTwoPi * f; }

/// Where the Bogoliubov frequency comes from.
///   figure       omega_b is an independent input
///   derived      omega_b = sqrt((nu + U_eff)(nu + 3 U_eff)) from the given nu, U_eff
///   microscopic  Delta, g, nu, U_eff and omega_b all follow from MicroscopicInputs
enum class OmegaBSource { figure, derived, microscopic };

const char* to_string(OmegaBSource s);
OmegaBSource omega_b_source_from_string(const std::string& s);

/// Lattice-model quantities; only read when omega_b_source == microscopic.
struct MicroscopicInputs {
    double U0 = 0.0;       // optical lattice barrier height per photon, rad/s
    double J0 = 0.0;       // on-site overlap integral, dimensionless
    double E0 = 0.0;       // on-site kinetic energy, J
    double V_cl = 0.0;     // classical potential, J
    double Delta_c = 0.0;  // bare cavity-pump detuning, rad/s
    double U = 0.0;        // on-site atom-atom interaction energy, J
};

/// User-facing physical inputs. Rates are angular frequencies in rad/s.
struct SystemParams {
    double kappa = 0.0;    // cavity amplitude decay
    double gamma_b = 0.0;  // Bogoliubov-mode damping
    double omega_b = 0.0;  // Bogoliubov frequency (also the unit for "_wb" config values)
    double Delta = 0.0;    // effective cavity detuning
    double g = 0.0;        // condensate-field coupling
    double U_eff = 0.0;    // effective on-site interaction
    double nu = 0.0;       // composite frequency shift

    double P_l = 0.0;  // pump power, W
    double P_p = 0.0;  // probe power, W
    double omega_l = from_hz(3.8e14);
    double omega_p = from_hz(3.8e14);

    long long N = 1;
    long long M = 1;

    OmegaBSource omega_b_source = OmegaBSource::figure;
    std::optional<MicroscopicInputs> micro;

    // Delta = detuning_ratio * omega_b once omega_b is known. Lets presets
    // hold "Delta = omega_b" while omega_b itself moves.
    std::optional<double> detuning_ratio;

    // When set, g = coupling_per_photon * |c_s|^2 with c_s = Omega_l/(kappa + i Delta),
    // i.e. g follows the pump power. coupling_per_photon = 2 U0 J0 sqrt(N).
    std::optional<double> coupling_per_photon;

    /// Throws InvalidParameter on the first violated invariant.
    void validate() const;
};

/// Effective model in units where omega_b == 1.
struct EffectiveParams {
    double kappa = 0.0;
    double gamma_b = 0.0;
    double omega_b = 1.0;
    double Delta = 0.0;
    double g = 0.0;
    double U_eff = 0.0;
    double nu = 0.0;
    double Omega_l = 0.0;
    double eps_p = 1.0;
    double omega_b_si = 1.0;  // rad/s, for converting back to SI
    std::vector<std::string> warnings;

    /// Coefficient multiplying (dc + dc^dagger) in the mechanical equation.
    [[nodiscard]] double mechanical_drive() const { return g * (U_eff + nu); }

    /// Converts a duration in units of 1/omega_b to seconds.
    [[nodiscard]] double to_seconds(double t) const { return t / omega_b_si; }
};

double pump_amplitude_from_power(double power, double omega, double kappa);

struct BogoliubovFrequency {
    double value = 0.0;
    bool degenerate = false;  // nu == U_eff == 0
};

BogoliubovFrequency bogoliubov_frequency(double nu, double U_eff);

double effective_detuning(double Delta_c, double U0, long long N, double J0);

/// Effective quantities obtained from the lattice model at pump amplitude Omega_l.
struct MicroscopicDerivation {
    double Delta = 0.0;
    double g = 0.0;
    double nu = 0.0;
    double U_eff = 0.0;
    double omega_b = 0.0;
};

MicroscopicDerivation derive_from_microscopic(const MicroscopicInputs& micro, long long N,
                                              long long M, double kappa, double Omega_l);

/// Applies every derivation rule (omega_b source, detuning ratio, pump-dependent
/// coupling) and returns SI parameters in which all effective quantities are explicit.
SystemParams resolve(const SystemParams& params);

EffectiveParams normalize(const SystemParams& params);

/// Coupling per photon that makes g equal g_target at pump power P_ref with the
/// remaining parameters of `params` (detuning ratio and omega_b source included).
double calibrate_coupling_per_photon(const SystemParams& params, double g_target, double P_ref);

}  // namespace fanocav

#include "fanocav/model.hpp"

#include <cmath>
#include <complex>

#include <fmt/format.h>

#include "fanocav/errors.hpp"

namespace fanocav {

const char* to_string(OmegaBSource s) {
    switch (s) {
        case OmegaBSource::figure: return "figure";
        case OmegaBSource::derived: return "derived";
        case OmegaBSource::microscopic: return "microscopic";
    }
    return "figure";
}

OmegaBSource omega_b_source_from_string(const std::string& s) {
    if (s == "figure") return OmegaBSource::figure;
    if (s == "derived") return OmegaBSource::derived;
    if (s == "microscopic") return OmegaBSource::microscopic;
    throw InvalidParameter(
        fmt::format("unknown omega_b source '{}' (expected figure, derived or microscopic)", s));
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw InvalidParameter(what);
}

bool finite_all(std::initializer_list<double> xs) {
    for (double x : xs)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

void SystemParams::validate() const {
    require(finite_all({kappa, gamma_b, omega_b, Delta, g, U_eff, nu, P_l, P_p, omega_l, omega_p}),
            "parameters must be finite");
    require(kappa > 0.0, "kappa must be > 0");
    require(gamma_b >= 0.0, "gamma_b must be >= 0");
    require(g >= 0.0, "g must be >= 0");
    require(U_eff >= 0.0, "U_eff must be >= 0");
    require(nu >= 0.0, "nu must be >= 0");
    require(P_l >= 0.0, "P_l must be >= 0");
    require(P_p >= 0.0, "P_p must be >= 0");
    require(omega_l > 0.0, "omega_l must be > 0");
    require(omega_p > 0.0, "omega_p must be > 0");
    require(N >= 1, "N must be >= 1");
    require(M >= 1, "M must be >= 1");
    if (omega_b_source == OmegaBSource::figure) require(omega_b > 0.0, "omega_b must be > 0");
    if (omega_b_source == OmegaBSource::microscopic)
        require(micro.has_value(), "microscopic omega_b source needs microscopic inputs");
    if (detuning_ratio) require(std::isfinite(*detuning_ratio), "detuning_ratio must be finite");
    if (coupling_per_photon)
        require(std::isfinite(*coupling_per_photon) && *coupling_per_photon >= 0.0,
                "coupling_per_photon must be >= 0");
}

double pump_amplitude_from_power(double power, double omega, double kappa) {
    if (!(omega > 0.0)) throw InvalidParameter("drive frequency must be > 0");
    if (!(kappa > 0.0)) throw InvalidParameter("kappa must be > 0");
    if (power < 0.0) throw InvalidParameter("power must be >= 0");
    return std::sqrt(2.0 * kappa * power / (kHbar * omega));
}

BogoliubovFrequency bogoliubov_frequency(double nu, double U_eff) {
    if (nu == 0.0 && U_eff == 0.0) return {0.0, true};
    return {std::sqrt((nu + U_eff) * (nu + 3.0 * U_eff)), false};
}

double effective_detuning(double Delta_c, double U0, long long N, double J0) {
    if (N < 1) throw InvalidParameter("N must be >= 1");
    return Delta_c - U0 * static_cast<double>(N) * J0;
}

MicroscopicDerivation derive_from_microscopic(const MicroscopicInputs& micro, long long N,
                                              long long M, double kappa, double Omega_l) {
    if (M < 1) throw InvalidParameter("M must be >= 1");
    MicroscopicDerivation d;
    d.Delta = effective_detuning(micro.Delta_c, micro.U0, N, micro.J0);
    const double photons = std::norm(std::complex<double>(Omega_l) / std::complex<double>(kappa, d.Delta));
    d.g = 2.0 * micro.U0 * micro.J0 * std::sqrt(static_cast<double>(N)) * photons;
    d.nu = micro.U0 * micro.J0 * photons + micro.V_cl * micro.J0 / kHbar + micro.E0 / kHbar;
    d.U_eff = micro.U * static_cast<double>(N) / (kHbar * static_cast<double>(M));
    d.omega_b = bogoliubov_frequency(d.nu, d.U_eff).value;
    return d;
}

SystemParams resolve(const SystemParams& params) {
    params.validate();
    SystemParams r = params;
    const double Omega_l =
        r.P_l > 0.0 ? pump_amplitude_from_power(r.P_l, r.omega_l, r.kappa) : 0.0;

    switch (r.omega_b_source) {
        case OmegaBSource::figure: break;
        case OmegaBSource::derived: r.omega_b = bogoliubov_frequency(r.nu, r.U_eff).value; break;
        case OmegaBSource::microscopic: {
            const auto d = derive_from_microscopic(*r.micro, r.N, r.M, r.kappa, Omega_l);
            r.Delta = d.Delta;
            r.g = d.g;
            r.nu = d.nu;
            r.U_eff = d.U_eff;
            r.omega_b = d.omega_b;
            break;
        }
    }
    if (!(r.omega_b > 0.0))
        throw InvalidParameter("omega_b must be > 0 (degenerate Bogoliubov mode: nu = U_eff = 0)");

    if (r.detuning_ratio) r.Delta = *r.detuning_ratio * r.omega_b;

    if (r.coupling_per_photon && r.omega_b_source != OmegaBSource::microscopic) {
        const double photons =
            std::norm(std::complex<double>(Omega_l) / std::complex<double>(r.kappa, r.Delta));
        r.g = *r.coupling_per_photon * photons;
    }
    return r;
}

EffectiveParams normalize(const SystemParams& params) {
    const SystemParams r = resolve(params);
    const double w = r.omega_b;

    EffectiveParams e;
    e.kappa = r.kappa / w;
    e.gamma_b = r.gamma_b / w;
    e.omega_b = 1.0;
    e.Delta = r.Delta / w;
    e.g = r.g / w;
    e.U_eff = r.U_eff / w;
    e.nu = r.nu / w;
    e.Omega_l = r.P_l > 0.0 ? pump_amplitude_from_power(r.P_l, r.omega_l, r.kappa) / w : 0.0;
    // Unit probe when no probe power is given; observables are normalized by eps_p.
    e.eps_p = r.P_p > 0.0 ? pump_amplitude_from_power(r.P_p, r.omega_p, r.kappa) / w : 1.0;
    e.omega_b_si = w;

    if (r.omega_b_source == OmegaBSource::figure) {
        const auto b = bogoliubov_frequency(r.nu, r.U_eff);
        const double ratio = b.value / w;
        if (b.degenerate) {
            e.warnings.emplace_back("degenerate Bogoliubov mode: nu = U_eff = 0");
        } else if (std::abs(ratio - 1.0) > 0.01) {
            e.warnings.push_back(fmt::format(
                "omega_b is inconsistent with sqrt((nu+U_eff)(nu+3U_eff)): derived/given = {:.6g}",
                ratio));
        }
    }
    return e;
}

double calibrate_coupling_per_photon(const SystemParams& params, double g_target, double P_ref) {
    if (!(P_ref > 0.0)) throw InvalidParameter("reference power must be > 0");
    SystemParams probe = params;
    probe.P_l = P_ref;
    probe.coupling_per_photon.reset();
    if (probe.omega_b_source == OmegaBSource::microscopic)
        throw InvalidParameter("coupling calibration does not apply to the microscopic source");
    const SystemParams r = resolve(probe);
    const double Omega_l = pump_amplitude_from_power(r.P_l, r.omega_l, r.kappa);
    const double photons =
        std::norm(std::complex<double>(Omega_l) / std::complex<double>(r.kappa, r.Delta));
    return g_target / photons;
}

}  // namespace fanocav

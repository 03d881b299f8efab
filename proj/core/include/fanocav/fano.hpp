#pragma once

#include <optional>
#include <span>

#include "fanocav/model.hpp"

namespace fanocav {

/// 2 (x+q)^2 / ((1+q^2)(1+x^2)). Zero at x = -q, maximum 2 at x = 1/q.
double fano_lineshape(double x, double q);

struct FanoShape {
    double q = 0.0;
    double Gamma = 0.0;  // units of omega_b
    double Omega = 0.0;  // Delta - omega_b
    double x_zero = 0.0;
    std::optional<double> x_peak;  // absent when q == 0
    double peak_height = 2.0;
    bool symmetric = false;
};

FanoShape fano_shape_from_q(double q, double Gamma, double Omega);

/// Omega = Delta - omega_b, q = -Omega/kappa, Gamma = 2 kappa Delta g / (kappa^2 + Omega^2).
FanoShape fano_params_from_system(const EffectiveParams& p);

/// x = (nu + U_eff - omega_b)/Gamma - q, evaluated as printed. Has no probe dependence.
double printed_reduced_coordinate(const EffectiveParams& p, const FanoShape& shape);

/// Running coordinate used for plotting: x = (delta - omega_b)/Gamma - q.
double reduced_coordinate(const FanoShape& shape, double delta_bar);

struct Landmarks {
    double delta_at_min = 0.0;
    double mu_min = 0.0;
    double delta_at_max = 0.0;
    double mu_max = 0.0;
    std::size_t index_min = 0;
    std::size_t index_max = 0;
};

/// Global extrema with 3-point parabolic refinement. Ties go to the smallest delta.
Landmarks locate_landmarks(std::span<const double> delta, std::span<const double> mu);

struct FanoFitGuess {
    double amplitude = 1.0;
    double delta0 = 0.0;  // location of the zero
    double Gamma = 1.0;
    double q = 1.0;
};

/// Starting point from the located zero and peak. `q_hint` fixes |q| and is
/// given the sign implied by the peak-zero ordering.
FanoFitGuess guess_from_landmarks(std::span<const double> delta, std::span<const double> mu,
                                  double q_hint = 1.0);

struct FanoFit {
    double q_fit = 0.0;
    double Gamma_fit = 0.0;
    double delta0 = 0.0;
    double amplitude = 0.0;
    double rms_residual = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Model: A * fano_lineshape((delta - delta0)/Gamma - q, q). Returns Gamma > 0.
FanoFit fit_fano(std::span<const double> delta, std::span<const double> mu, const FanoFitGuess& init,
                 int max_iterations = 200, double step_tolerance = 1e-8);

double fano_model(double delta, double amplitude, double delta0, double Gamma, double q);

}  // namespace fanocav

#include "fanocav/fano.hpp"

#include <cmath>
#include <algorithm>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "fanocav/errors.hpp"

namespace fanocav {

double fano_lineshape(double x, double q) {
    const double n = x + q;
    return 2.0 * n * n / ((1.0 + q * q) * (1.0 + x * x));
}

FanoShape fano_shape_from_q(double q, double Gamma, double Omega) {
    FanoShape s;
    s.q = q;
    s.Gamma = Gamma;
    s.Omega = Omega;
    s.x_zero = -q;
    s.symmetric = q == 0.0;
    if (!s.symmetric) s.x_peak = 1.0 / q;
    s.peak_height = 2.0;
    return s;
}

FanoShape fano_params_from_system(const EffectiveParams& p) {
    if (!(p.kappa > 0.0)) throw InvalidParameter("kappa must be > 0");
    const double Omega = p.Delta - p.omega_b;
    const double q = Omega == 0.0 ? 0.0 : -Omega / p.kappa;
    const double Gamma = 2.0 * p.kappa * p.Delta * p.g / (p.kappa * p.kappa + Omega * Omega);
    return fano_shape_from_q(q, Gamma, Omega);
}

double printed_reduced_coordinate(const EffectiveParams& p, const FanoShape& shape) {
    if (shape.Gamma == 0.0) throw DivisionByZero("Gamma is zero");
    return (p.nu + p.U_eff - p.omega_b) / shape.Gamma - shape.q;
}

double reduced_coordinate(const FanoShape& shape, double delta_bar) {
    if (shape.Gamma == 0.0) throw DivisionByZero("Gamma is zero");
    return delta_bar / shape.Gamma - shape.q;
}

namespace {

void check_grid(std::span<const double> delta, std::span<const double> mu, std::size_t min_points) {
    if (delta.size() != mu.size()) throw InvalidInput("grid and data sizes differ");
    if (delta.size() < min_points)
        throw InvalidInput("spectrum needs at least " + std::to_string(min_points) + " points");
    for (std::size_t i = 1; i < delta.size(); ++i)
        if (!(delta[i] > delta[i - 1])) throw InvalidInput("delta grid must be strictly increasing");
}

// Vertex of the parabola through three points, clamped to the bracket.
std::pair<double, double> parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    if (a == 0.0) return {x1, y1};
    const double b = d01 - a * (x0 + x1);
    const double xv = -b / (2.0 * a);
    if (xv < x0 || xv > x2) return {x1, y1};
    // Newton form
    return {xv, y0 + d01 * (xv - x0) + a * (xv - x0) * (xv - x1)};
}

}  // namespace

Landmarks locate_landmarks(std::span<const double> delta, std::span<const double> mu) {
    check_grid(delta, mu, 3);
    Landmarks l;
    for (std::size_t i = 1; i < mu.size(); ++i) {
        if (mu[i] < mu[l.index_min]) l.index_min = i;
        if (mu[i] > mu[l.index_max]) l.index_max = i;
    }
    auto refine = [&](std::size_t i, double& where, double& value) {
        where = delta[i];
        value = mu[i];
        if (i == 0 || i + 1 == mu.size()) return;
        auto [x, y] = parabolic_vertex(delta[i - 1], mu[i - 1], delta[i], mu[i], delta[i + 1], mu[i + 1]);
        where = x;
        value = y;
    };
    refine(l.index_min, l.delta_at_min, l.mu_min);
    refine(l.index_max, l.delta_at_max, l.mu_max);
    return l;
}

FanoFitGuess guess_from_landmarks(std::span<const double> delta, std::span<const double> mu, double q_hint) {
    const Landmarks l = locate_landmarks(delta, mu);
    FanoFitGuess g;
    const double q = std::abs(q_hint) > 0.0 ? std::abs(q_hint) : 1.0;
    const double sep = l.delta_at_max - l.delta_at_min;
    g.q = sep >= 0.0 ? q : -q;
    g.delta0 = l.delta_at_min;
    // peak sits at u = q + 1/q
    const double span = delta.back() - delta.front();
    g.Gamma = sep != 0.0 ? sep / (g.q + 1.0 / g.q) : span / 10.0;
    if (g.Gamma <= 0.0) g.Gamma = span / 10.0;
    g.amplitude = l.mu_max / 2.0;
    if (g.amplitude == 0.0) g.amplitude = 1.0;
    return g;
}

double fano_model(double delta, double amplitude, double delta0, double Gamma, double q) {
    const double u = (delta - delta0) / Gamma;
    return amplitude * fano_lineshape(u - q, q);
}

FanoFit fit_fano(std::span<const double> delta, std::span<const double> mu, const FanoFitGuess& init,
                 int max_iterations, double step_tolerance) {
    check_grid(delta, mu, 10);
    if (!(init.Gamma != 0.0)) throw InvalidInput("initial Gamma must be nonzero");

    const auto n = static_cast<Eigen::Index>(delta.size());
    using Vec4 = Eigen::Vector4d;

    auto residuals = [&](const Vec4& t, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
        const double A = t(0), d0 = t(1), G = t(2), q = t(3);
        const double D1 = 1.0 + q * q;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double u = (delta[static_cast<std::size_t>(i)] - d0) / G;
            const double w = u - q;
            const double D2 = 1.0 + w * w;
            const double N = 2.0 * u * u;
            const double f = N / (D1 * D2);
            r(i) = A * f - mu[static_cast<std::size_t>(i)];
            if (J) {
                const double df_du = 4.0 * u / (D1 * D2) - N * 2.0 * w / (D1 * D2 * D2);
                (*J)(i, 0) = f;
                (*J)(i, 1) = A * df_du * (-1.0 / G);
                (*J)(i, 2) = A * df_du * (-u / G);
                (*J)(i, 3) = A * N * (-2.0 * q / (D1 * D1 * D2) + 2.0 * w / (D1 * D2 * D2));
            }
        }
    };

    Vec4 theta(init.amplitude, init.delta0, init.Gamma, init.q);
    Eigen::VectorXd r(n), r_trial(n);
    Eigen::MatrixXd J(n, 4);
    residuals(theta, r, &J);
    double cost = r.squaredNorm();
    double lambda = 1e-3;

    FanoFit fit;
    int it = 0;
    for (; it < max_iterations; ++it) {
        const Eigen::Matrix4d JtJ = J.transpose() * J;
        const Vec4 Jtr = J.transpose() * r;
        bool accepted = false;
        Vec4 step = Vec4::Zero();
        for (int attempt = 0; attempt < 30 && !accepted; ++attempt) {
            Eigen::Matrix4d H = JtJ;
            for (int k = 0; k < 4; ++k) H(k, k) += lambda * std::max(JtJ(k, k), 1e-300);
            step = H.ldlt().solve(-Jtr);
            if (!step.allFinite()) {
                lambda *= 10.0;
                continue;
            }
            const Vec4 trial = theta + step;
            if (trial(2) == 0.0) {
                lambda *= 10.0;
                continue;
            }
            residuals(trial, r_trial, nullptr);
            const double trial_cost = r_trial.squaredNorm();
            if (std::isfinite(trial_cost) && trial_cost <= cost) {
                theta = trial;
                cost = trial_cost;
                lambda = std::max(lambda / 3.0, 1e-15);
                accepted = true;
            } else {
                lambda *= 2.0;
            }
        }
        if (!accepted) break;
        residuals(theta, r, &J);
        if (step.norm() <= step_tolerance * (theta.norm() + step_tolerance)) {
            fit.converged = true;
            ++it;
            break;
        }
    }

    // (Gamma, q) and (-Gamma, -q) describe the same curve.
    if (theta(2) < 0.0) {
        theta(2) = -theta(2);
        theta(3) = -theta(3);
    }
    fit.amplitude = theta(0);
    fit.delta0 = theta(1);
    fit.Gamma_fit = theta(2);
    fit.q_fit = theta(3);
    fit.rms_residual = std::sqrt(cost / static_cast<double>(n));
    fit.iterations = it;
    return fit;
}

}  // namespace fanocav

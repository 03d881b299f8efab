#pragma once

#include <algorithm>
#include <cmath>

#include "fanocav/model.hpp"

namespace testutil {

// fig2 preset rates in omega_b units.
inline fanocav::EffectiveParams fig2(double Delta, double g) {
    fanocav::EffectiveParams p;
    p.kappa = 0.1;
    p.gamma_b = 7.5e-7;
    p.Delta = Delta;
    p.g = g;
    p.U_eff = 1.0;
    p.nu = 100.0;
    p.omega_b_si = fanocav::from_hz(1e4);
    return p;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace testutil

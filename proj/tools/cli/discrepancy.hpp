#pragma once

#include <cstddef>
#include <span>

#include "fanocav/model.hpp"
#include "fanocav/response.hpp"

namespace fanocav::cli {

/// Relative difference |a - b| / max(|a|, |b|) of mu between two response modes.
struct DiscrepancyReport {
    double max_relative = 0.0;
    double median_relative = 0.0;
    double delta_at_max = 0.0;
    std::size_t compared = 0;
    std::size_t excluded = 0;  // poles or singular points in either mode
};

DiscrepancyReport discrepancy_report(const EffectiveParams& p, std::span<const double> delta,
                                     const ResponseOptions& reference, const ResponseOptions& other);

/// Solver (counter sideband kept) against the printed closed form.
DiscrepancyReport discrepancy_report(const EffectiveParams& p, std::span<const double> delta);

}  // namespace fanocav::cli

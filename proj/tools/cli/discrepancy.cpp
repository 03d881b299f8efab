#include "discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fanocav/errors.hpp"

namespace fanocav::cli {

DiscrepancyReport discrepancy_report(const EffectiveParams& p, std::span<const double> delta,
                                     const ResponseOptions& reference, const ResponseOptions& other) {
    DiscrepancyReport r;
    std::vector<double> rel;
    rel.reserve(delta.size());
    for (double d : delta) {
        double a = 0.0, b = 0.0;
        try {
            a = normalized_output(p, d, reference).real();
            b = normalized_output(p, d, other).real();
        } catch (const PoleError&) {
            ++r.excluded;
            continue;
        } catch (const DegenerateResponse&) {
            ++r.excluded;
            continue;
        }
        const double scale = std::max(std::abs(a), std::abs(b));
        const double x = scale > 0.0 ? std::abs(a - b) / scale : 0.0;
        if (rel.empty() || x > r.max_relative) {
            r.max_relative = x;
            r.delta_at_max = d;
        }
        rel.push_back(x);
    }
    r.compared = rel.size();
    if (!rel.empty()) {
        const auto mid = rel.begin() + static_cast<std::ptrdiff_t>(rel.size() / 2);
        std::nth_element(rel.begin(), mid, rel.end());
        r.median_relative = *mid;
        if (rel.size() % 2 == 0) {
            const double lower = *std::max_element(rel.begin(), mid);
            r.median_relative = 0.5 * (r.median_relative + lower);
        }
    }
    return r;
}

DiscrepancyReport discrepancy_report(const EffectiveParams& p, std::span<const double> delta) {
    ResponseOptions printed;
    printed.mode = ResponseMode::printed;
    return discrepancy_report(p, delta, ResponseOptions{}, printed);
}

}  // namespace fanocav::cli

#include "mvsk/convexity.hpp"

#include <cmath>

#include "mvsk/errors.hpp"

namespace mvsk {

std::string to_string(RegionLabel label) {
    switch (label) {
    case RegionLabel::GlobalConvex: return "GlobalConvex";
    case RegionLabel::DomainConvex: return "DomainConvex";
    case RegionLabel::Unknown: return "Unknown";
    }
    return "Unknown";
}

ConditionBreakdown evaluate_conditions(const Weights& lambda, const Bounds& bounds) {
    const double l2 = lambda[1];
    const double l3 = lambda[2];
    const double l4 = lambda[3];
    const double up = bounds.upper;
    const double lo = bounds.lower;

    ConditionBreakdown c;
    // l3 <= sqrt(8/3 l2 l4), squared to keep the double root exact
    const bool no_real_roots = 3.0 * l3 * l3 <= 8.0 * l2 * l4;
    c.flat = l4 == 0.0 && 3.0 * up * l3 <= l2;
    c.no_roots = l4 > 0.0 && no_real_roots;
    const bool two_roots = l4 > 0.0 && !no_real_roots;
    c.below = two_roots && 3.0 * up * l3 <= l2 + 6.0 * up * up * l4 && 4.0 * up * l4 <= l3;
    c.above = two_roots && 3.0 * lo * l3 <= l2 + 6.0 * lo * lo * l4 && 4.0 * lo * l4 >= l3;
    c.global = c.no_roots || (l4 == 0.0 && l3 == 0.0);
    return c;
}

RegionLabel classify_lambda(const Weights& lambda, const Bounds& bounds) {
    const auto c = evaluate_conditions(lambda, bounds);
    if (c.global) return RegionLabel::GlobalConvex;
    if (c.any()) return RegionLabel::DomainConvex;
    return RegionLabel::Unknown;
}

double region_volume(const Bounds& bounds, RegionTarget target, int resolution) {
    if (resolution < 2) throw DomainError("region_volume needs resolution >= 2");
    const double r = resolution;
    long long total = 0;
    long long hits = 0;
    for (int a = 0; a <= resolution; ++a) {
        for (int b = 0; a + b <= resolution; ++b) {
            for (int c = 0; a + b + c <= resolution; ++c) {
                const double l2 = a / r;
                const double l3 = b / r;
                const double l4 = c / r;
                const Weights lambda{1.0 - l2 - l3 - l4, l2, l3, l4};
                const auto label = classify_lambda(lambda, bounds);
                ++total;
                if (label == RegionLabel::GlobalConvex ||
                    (target == RegionTarget::DomainConvex && label == RegionLabel::DomainConvex)) {
                    ++hits;
                }
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

} // namespace mvsk

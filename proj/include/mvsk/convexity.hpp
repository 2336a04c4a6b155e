#pragma once

#include <string>

#include "mvsk/moments.hpp"
#include "mvsk/objective.hpp"

namespace mvsk {

/// Convexity certificate of a scalarization.
///
/// GlobalConvex: the Hessian weight Psi is nonnegative on the whole real
/// line, so F_lambda is convex on R^n. DomainConvex: Psi is nonnegative on
/// [bounds.lower, bounds.upper], so F_lambda is convex on any domain those
/// bounds cover. Unknown: neither certificate holds.
enum class RegionLabel { GlobalConvex, DomainConvex, Unknown };

std::string to_string(RegionLabel label);

/// Which of the four nonnegativity conditions on Psi hold.
struct ConditionBreakdown {
    bool flat = false;      ///< (i)   l4 = 0 and 3 upper l3 <= l2
    bool no_roots = false;  ///< (ii)  l4 > 0 and l3 <= sqrt(8/3 l2 l4)
    bool below = false;     ///< (iii) range lies left of the smaller root of Psi
    bool above = false;     ///< (iv)  range lies right of the larger root of Psi
    bool global = false;    ///< (ii) or l3 = l4 = 0

    bool any() const { return flat || no_roots || below || above; }
};

ConditionBreakdown evaluate_conditions(const Weights& lambda, const Bounds& bounds);

/// Note that l3 = l4 = 0 counts as GlobalConvex: F is then linear plus a PSD quadratic.
RegionLabel classify_lambda(const Weights& lambda, const Bounds& bounds);

enum class RegionTarget {
    GlobalConvex, ///< Lambda_+
    DomainConvex, ///< Lambda_Delta or Lambda_cube, depending on the bounds supplied
};

/// Fraction of the points of a uniform grid with `resolution` steps per axis
/// over {(l2, l3, l4) >= 0 : l2 + l3 + l4 <= 1} that fall in `target`.
double region_volume(const Bounds& bounds, RegionTarget target, int resolution);

} // namespace mvsk

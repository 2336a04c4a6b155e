#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mvsk/moments.hpp"

namespace mvsk {

/// Feasible set of a portfolio: the standard simplex or the cube [-B, B]^n,
/// optionally restricted to portfolios supported on `support` (0-based,
/// sorted, nonempty).
struct Domain {
    DomainKind kind = DomainKind::Simplex;
    double cube_bound = 1.0;
    std::optional<std::vector<int>> support;

    static Domain simplex() { return {}; }
    static Domain cube(double bound);

    /// Throws DomainError on B <= 0 or an empty/out-of-range support.
    void validate(int n) const;
    std::string describe() const;
};

/// Euclidean projection onto {y >= 0, sum y = 1} by sorting and thresholding.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& x);

Eigen::VectorXd project_cube(const Eigen::VectorXd& x, double bound);

/// Projects the coordinates in `support` onto the simplex of that face and
/// zeroes the rest.
Eigen::VectorXd project_face(const Eigen::VectorXd& x, const std::vector<int>& support);

/// Projection onto `domain`. Restricted cubes clamp the supported coordinates
/// and zero the others.
Eigen::VectorXd project(const Eigen::VectorXd& x, const Domain& domain);

} // namespace mvsk

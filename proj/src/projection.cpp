#include "mvsk/projection.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mvsk/errors.hpp"

namespace mvsk {

Domain Domain::cube(double bound) {
    Domain d;
    d.kind = DomainKind::Cube;
    d.cube_bound = bound;
    return d;
}

void Domain::validate(int n) const {
    if (kind == DomainKind::Cube && !(cube_bound > 0.0)) throw DomainError("cube bound must be positive");
    if (!support) return;
    if (support->empty()) throw DomainError("support restriction must be nonempty");
    for (std::size_t i = 0; i < support->size(); ++i) {
        const int idx = (*support)[i];
        if (idx < 0 || idx >= n) throw DomainError("support index " + std::to_string(idx) + " out of range");
        if (i > 0 && idx <= (*support)[i - 1]) throw DomainError("support indices must be strictly increasing");
    }
}

std::string Domain::describe() const {
    std::ostringstream os;
    if (kind == DomainKind::Simplex) {
        os << "simplex";
    } else {
        os << "cube(" << cube_bound << ")";
    }
    return os.str();
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& x) {
    const auto n = x.size();
    if (n == 0) return x;
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return x(a) > x(b) || (x(a) == x(b) && a < b);
    });

    // Largest rho with u_rho - (sum_{j<=rho} u_j - 1) / rho > 0 on the sorted values.
    double running = 0.0;
    double theta = 0.0;
    for (Eigen::Index r = 0; r < n; ++r) {
        running += x(order[static_cast<std::size_t>(r)]);
        const double candidate = (running - 1.0) / static_cast<double>(r + 1);
        if (x(order[static_cast<std::size_t>(r)]) - candidate > 0.0) theta = candidate;
    }
    return (x.array() - theta).cwiseMax(0.0).matrix();
}

Eigen::VectorXd project_cube(const Eigen::VectorXd& x, double bound) {
    return x.cwiseMax(-bound).cwiseMin(bound);
}

Eigen::VectorXd project_face(const Eigen::VectorXd& x, const std::vector<int>& support) {
    if (support.empty()) throw DomainError("project_face needs a nonempty support");
    Eigen::VectorXd restricted(static_cast<Eigen::Index>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] < 0 || support[i] >= x.size()) throw DomainError("support index out of range");
        restricted(static_cast<Eigen::Index>(i)) = x(support[i]);
    }
    const Eigen::VectorXd p = project_simplex(restricted);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (std::size_t i = 0; i < support.size(); ++i) out(support[i]) = p(static_cast<Eigen::Index>(i));
    return out;
}

Eigen::VectorXd project(const Eigen::VectorXd& x, const Domain& domain) {
    if (domain.kind == DomainKind::Simplex) {
        return domain.support ? project_face(x, *domain.support) : project_simplex(x);
    }
    if (!domain.support) return project_cube(x, domain.cube_bound);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (int i : *domain.support) out(i) = std::clamp(x(i), -domain.cube_bound, domain.cube_bound);
    return out;
}

} // namespace mvsk

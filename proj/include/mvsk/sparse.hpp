#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mvsk/objective.hpp"
#include "mvsk/projection.hpp"
#include "mvsk/solver.hpp"

namespace mvsk {

/// Support-constrained solving by decomposition into faces.
///
/// A portfolio is admissible when |supp(w)| <= k and its support contains no
/// forbidden pair. Every admissible portfolio lives on one of the maximal
/// admissible index sets U, so minimizing over each face and taking the best
/// face value gives the constrained optimum.
struct SparseOptions {
    int k = 1; ///< maximum support size
    /// Only consider faces inside the support of the dense solution.
    bool use_support_heuristic = true;
    /// Keep only the `proximity_count` faces whose projection of the dense
    /// solution lies closest to it.
    bool use_proximity_heuristic = true;
    int proximity_count = 0; ///< 0 means n
    std::vector<std::pair<int, int>> forbidden_pairs;

    void validate(int n) const;
    /// Both heuristics off: exhaustive enumeration.
    static SparseOptions exhaustive(int k);
};

/// Submodel on the assets in `support` (sorted, 0-based).
MomentModel restrict_model(const MomentModel& model, const std::vector<int>& support);

/// Pairs {i < j} whose sample correlation is at least `threshold` in absolute value.
std::vector<std::pair<int, int>> correlated_pairs(const MomentModel& model, double threshold);

/// All maximal admissible subsets of `ground` (sorted), in lexicographic order.
std::vector<std::vector<int>> admissible_supports(const std::vector<int>& ground, const SparseOptions& opts);

/// Candidate faces for a dense solution, nearest first.
///
/// If the dense solution is already admissible its support is the single
/// candidate. Ties in distance keep lexicographic order.
std::vector<std::vector<int>> enumerate_candidates(const Eigen::VectorXd& w_dense, const SparseOptions& opts,
                                                   const Domain& domain = Domain::simplex());

/// Best face solution, lifted back to R^n. Returns `dense` unchanged when it
/// is already admissible.
SolveResult solve_sparse(const MomentEvaluator& evaluator, const LambdaPoint& lambda, const Domain& domain,
                         const SparseOptions& opts, const SolveResult& dense, const SolverOptions& solver_opts = {});

} // namespace mvsk

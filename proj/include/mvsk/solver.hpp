#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mvsk/objective.hpp"
#include "mvsk/projection.hpp"

namespace mvsk {

inline constexpr double kSupportEpsilon = 1e-8;

struct SolverOptions {
    int max_iterations = 2000;
    double backtracking_factor = 2.0;
    double initial_step = 1.0;
    /// Stop once the gradient mapping norm falls to this value; 0 runs the full budget.
    double stationarity_tolerance = 0.0;
    bool record_trace = false;

    void validate() const;
};

struct SolveResult {
    Eigen::VectorXd w;
    ObjectiveValues objectives;
    double scalarized_value = 0.0;
    int iterations_used = 0;
    /// ||w - P(w - t grad F(w))|| / t at the returned point, t the final step.
    double projected_gradient_norm = 0.0;
    /// Step size in use when the run ended (1 / local Lipschitz estimate).
    double final_step = 0.0;
    /// F at each iterate x_k, k = 1..iterations_used (only with record_trace).
    std::vector<double> trace;
    /// Running minimum of `trace`.
    std::vector<double> best_trace;
    /// Largest constraint violation over all iterates (only with record_trace).
    double max_iterate_infeasibility = 0.0;
    std::vector<int> support;
};

/// Indices with |w_i| > kSupportEpsilon.
std::vector<int> support_of(const Eigen::VectorXd& w, double epsilon = kSupportEpsilon);

/// Minimizes F_lambda over `domain` by FISTA with backtracking.
///
/// The starting point is the projected warm start if given, otherwise the
/// barycenter of the simplex (or of the restricted face) or the origin of
/// the cube. Before the first iteration the step is enlarged by the
/// backtracking factor while the quadratic upper model still holds at the
/// starting point; afterwards it only shrinks. Returns the best iterate.
/// Throws NumericalError on a non-finite value or gradient.
SolveResult solve(const MomentEvaluator& evaluator, const LambdaPoint& lambda, const Domain& domain,
                  const SolverOptions& opts = {}, const std::optional<Eigen::VectorXd>& warm_start = std::nullopt);

SolveResult solve(const MomentModel& model, const LambdaPoint& lambda, const Domain& domain,
                  const SolverOptions& opts = {}, const std::optional<Eigen::VectorXd>& warm_start = std::nullopt);

/// High-budget solve used as a stand-in for the optimal value.
double scalarized_reference(const MomentEvaluator& evaluator, const LambdaPoint& lambda, const Domain& domain,
                            int budget = 20000, const std::optional<Eigen::VectorXd>& warm_start = std::nullopt);

} // namespace mvsk

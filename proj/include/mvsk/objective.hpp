#pragma once

#include <array>

#include <Eigen/Dense>

#include "mvsk/moments.hpp"

namespace mvsk {

/// Raw scalarization weights (lambda_1..lambda_4), not necessarily normalized.
using Weights = std::array<double, 4>;

/// A hyper-parameter in the 4-simplex: nonnegative entries summing to one.
class LambdaPoint {
public:
    /// Throws DomainError unless every entry is >= 0 and the sum is 1 within 1e-12.
    LambdaPoint(double l1, double l2, double l3, double l4);
    explicit LambdaPoint(const Weights& w) : LambdaPoint(w[0], w[1], w[2], w[3]) {}

    /// Rescales nonnegative weights with a positive sum onto the simplex.
    static LambdaPoint normalized(const Weights& w);

    double operator[](int i) const { return w_[static_cast<std::size_t>(i)]; }
    const Weights& weights() const { return w_; }
    operator const Weights&() const { return w_; }

    /// Every entry strictly positive.
    bool positive() const { return w_[0] > 0 && w_[1] > 0 && w_[2] > 0 && w_[3] > 0; }

private:
    Weights w_;
};

struct ObjectiveValues {
    double f1 = 0.0; ///< mean
    double f2 = 0.0; ///< variance
    double f3 = 0.0; ///< skewness
    double f4 = 0.0; ///< kurtosis

    double operator[](int i) const { return i == 0 ? f1 : i == 1 ? f2 : i == 2 ? f3 : f4; }
};

// Reference evaluation straight from the stored tensors. Each call costs
// O(n^4); use MomentEvaluator inside iterative solvers.

ObjectiveValues eval_objectives(const MomentModel& model, const Eigen::VectorXd& w);

/// -l1 f1 + l2 f2 - l3 f3 + l4 f4
double eval_scalarized(const MomentModel& model, const Weights& lambda, const Eigen::VectorXd& w);

Eigen::VectorXd gradient(const MomentModel& model, const Weights& lambda, const Eigen::VectorXd& w);

Eigen::MatrixXd hessian(const MomentModel& model, const Weights& lambda, const Eigen::VectorXd& w);

/// 6 l4 y^2 - 3 l3 y + l2
double psi(const Weights& lambda, double y);

/// Precomputed symmetric-packed copies of S and K for repeated evaluation.
///
/// Exploits the symmetry of the co-moment tensors: only index pairs (i <= j)
/// are stored, which cuts the cost of one evaluation by roughly 4x. Immutable
/// after construction and safe to share between threads.
class MomentEvaluator {
public:
    explicit MomentEvaluator(const MomentModel& model);

    int n() const { return n_; }
    const MomentModel& model() const { return model_; }

    ObjectiveValues objectives(const Eigen::VectorXd& w) const;
    double value(const Weights& lambda, const Eigen::VectorXd& w) const;
    /// Returns the scalarized value and writes the gradient into `grad`.
    double value_and_gradient(const Weights& lambda, const Eigen::VectorXd& w, Eigen::VectorXd& grad) const;
    Eigen::MatrixXd hessian(const Weights& lambda, const Eigen::VectorXd& w) const;

private:
    struct Contractions {
        Eigen::MatrixXd skew; ///< S contracted once with w (n x n)
        Eigen::MatrixXd kurt; ///< K contracted twice with w (n x n)
    };
    Contractions contract(const Eigen::VectorXd& w, bool need_skew, bool need_kurt) const;

    MomentModel model_;
    int n_;
    int pairs_;
    Eigen::VectorXi pair_i_;
    Eigen::VectorXi pair_j_;
    Eigen::MatrixXd skew_packed_; ///< pairs x n
    Eigen::MatrixXd kurt_packed_; ///< pairs x pairs, columns weighted by pair multiplicity
};

} // namespace mvsk

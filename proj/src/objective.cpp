#include "mvsk/objective.hpp"

#include <cmath>
#include <string>

#include "mvsk/errors.hpp"

namespace mvsk {
namespace {

void check_dimension(const MomentModel& model, const Eigen::VectorXd& w) {
    if (w.size() != model.n) {
        throw DimensionError("portfolio has length " + std::to_string(w.size()) + ", model has " +
                             std::to_string(model.n) + " assets");
    }
}

// Row-major n x n view of an n^2 vector indexed i*n+j.
Eigen::MatrixXd unflatten(const Eigen::VectorXd& v, int n) {
    return Eigen::Map<const Eigen::MatrixXd>(v.data(), n, n).transpose();
}

Eigen::VectorXd kron_self(const Eigen::VectorXd& w) {
    const auto n = w.size();
    Eigen::VectorXd out(n * n);
    for (Eigen::Index i = 0; i < n; ++i) out.segment(i * n, n) = w(i) * w;
    return out;
}

} // namespace

LambdaPoint::LambdaPoint(double l1, double l2, double l3, double l4) : w_{l1, l2, l3, l4} {
    double sum = 0.0;
    for (double v : w_) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("lambda entries must be finite and nonnegative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw DomainError("lambda must sum to 1, got " + std::to_string(sum));
    }
}

LambdaPoint LambdaPoint::normalized(const Weights& w) {
    double sum = 0.0;
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("lambda entries must be finite and nonnegative");
        sum += v;
    }
    if (!(sum > 0.0)) throw DomainError("lambda must have a positive entry");
    Weights out{w[0] / sum, w[1] / sum, w[2] / sum, 0.0};
    out[3] = std::max(0.0, 1.0 - out[0] - out[1] - out[2]);
    return LambdaPoint(out);
}

ObjectiveValues eval_objectives(const MomentModel& model, const Eigen::VectorXd& w) {
    check_dimension(model, w);
    const Eigen::VectorXd ww = kron_self(w);
    ObjectiveValues f;
    f.f1 = model.mean.dot(w);
    f.f2 = w.dot(model.covariance * w);
    f.f3 = ww.dot(model.coskewness * w);
    f.f4 = ww.dot(model.cokurtosis * ww);
    return f;
}

double eval_scalarized(const MomentModel& model, const Weights& lambda, const Eigen::VectorXd& w) {
    const auto f = eval_objectives(model, w);
    return -lambda[0] * f.f1 + lambda[1] * f.f2 - lambda[2] * f.f3 + lambda[3] * f.f4;
}

Eigen::VectorXd gradient(const MomentModel& model, const Weights& lambda, const Eigen::VectorXd& w) {
    check_dimension(model, w);
    const int n = model.n;
    const Eigen::MatrixXd skew = unflatten(model.coskewness * w, n);
    const Eigen::MatrixXd kurt = unflatten(model.cokurtosis * kron_self(w), n);
    return -lambda[0] * model.mean + 2.0 * lambda[1] * (model.covariance * w) -
           3.0 * lambda[2] * (skew * w) + 4.0 * lambda[3] * (kurt * w);
}

Eigen::MatrixXd hessian(const MomentModel& model, const Weights& lambda, const Eigen::VectorXd& w) {
    check_dimension(model, w);
    const int n = model.n;
    const Eigen::MatrixXd skew = unflatten(model.coskewness * w, n);
    const Eigen::MatrixXd kurt = unflatten(model.cokurtosis * kron_self(w), n);
    Eigen::MatrixXd h = 2.0 * lambda[1] * model.covariance - 6.0 * lambda[2] * skew + 12.0 * lambda[3] * kurt;
    return 0.5 * (h + h.transpose());
}

double psi(const Weights& lambda, double y) {
    return 6.0 * lambda[3] * y * y - 3.0 * lambda[2] * y + lambda[1];
}

MomentEvaluator::MomentEvaluator(const MomentModel& model)
    : model_(model), n_(model.n), pairs_(model.n * (model.n + 1) / 2) {
    const int n = n_;
    if (model.mean.size() != n || model.covariance.rows() != n || model.covariance.cols() != n ||
        model.coskewness.rows() != n * n || model.coskewness.cols() != n || model.cokurtosis.rows() != n * n ||
        model.cokurtosis.cols() != n * n) {
        throw DimensionError("moment model tensors do not match n = " + std::to_string(n));
    }
    pair_i_.resize(pairs_);
    pair_j_.resize(pairs_);
    int a = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++a) {
            pair_i_(a) = i;
            pair_j_(a) = j;
        }

    skew_packed_.resize(pairs_, n);
    kurt_packed_.resize(pairs_, pairs_);
    for (int r = 0; r < pairs_; ++r) {
        const int row = pair_i_(r) * n + pair_j_(r);
        skew_packed_.row(r) = model.coskewness.row(row);
        for (int c = 0; c < pairs_; ++c) {
            const int k = pair_i_(c);
            const int l = pair_j_(c);
            kurt_packed_(r, c) = model.cokurtosis(row, k * n + l) * (k == l ? 1.0 : 2.0);
        }
    }
}

MomentEvaluator::Contractions MomentEvaluator::contract(const Eigen::VectorXd& w, bool need_skew,
                                                        bool need_kurt) const {
    Contractions c;
    auto unpack = [&](const Eigen::VectorXd& packed) {
        Eigen::MatrixXd full(n_, n_);
        for (int a = 0; a < pairs_; ++a) {
            full(pair_i_(a), pair_j_(a)) = packed(a);
            full(pair_j_(a), pair_i_(a)) = packed(a);
        }
        return full;
    };
    if (need_skew) c.skew = unpack(skew_packed_ * w);
    if (need_kurt) {
        Eigen::VectorXd z(pairs_);
        for (int a = 0; a < pairs_; ++a) z(a) = w(pair_i_(a)) * w(pair_j_(a));
        c.kurt = unpack(kurt_packed_ * z);
    }
    return c;
}

ObjectiveValues MomentEvaluator::objectives(const Eigen::VectorXd& w) const {
    check_dimension(model_, w);
    const auto c = contract(w, true, true);
    return {model_.mean.dot(w), w.dot(model_.covariance * w), w.dot(c.skew * w), w.dot(c.kurt * w)};
}

double MomentEvaluator::value(const Weights& lambda, const Eigen::VectorXd& w) const {
    check_dimension(model_, w);
    const auto c = contract(w, lambda[2] != 0.0, lambda[3] != 0.0);
    double v = -lambda[0] * model_.mean.dot(w) + lambda[1] * w.dot(model_.covariance * w);
    if (lambda[2] != 0.0) v -= lambda[2] * w.dot(c.skew * w);
    if (lambda[3] != 0.0) v += lambda[3] * w.dot(c.kurt * w);
    return v;
}

double MomentEvaluator::value_and_gradient(const Weights& lambda, const Eigen::VectorXd& w,
                                           Eigen::VectorXd& grad) const {
    check_dimension(model_, w);
    const auto c = contract(w, lambda[2] != 0.0, lambda[3] != 0.0);
    const Eigen::VectorXd vw = model_.covariance * w;
    grad = -lambda[0] * model_.mean + 2.0 * lambda[1] * vw;
    double v = -lambda[0] * model_.mean.dot(w) + lambda[1] * w.dot(vw);
    if (lambda[2] != 0.0) {
        const Eigen::VectorXd sw = c.skew * w;
        grad -= 3.0 * lambda[2] * sw;
        v -= lambda[2] * w.dot(sw);
    }
    if (lambda[3] != 0.0) {
        const Eigen::VectorXd kw = c.kurt * w;
        grad += 4.0 * lambda[3] * kw;
        v += lambda[3] * w.dot(kw);
    }
    return v;
}

Eigen::MatrixXd MomentEvaluator::hessian(const Weights& lambda, const Eigen::VectorXd& w) const {
    check_dimension(model_, w);
    const auto c = contract(w, true, true);
    return 2.0 * lambda[1] * model_.covariance - 6.0 * lambda[2] * c.skew + 12.0 * lambda[3] * c.kurt;
}

} // namespace mvsk

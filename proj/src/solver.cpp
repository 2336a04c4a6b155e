#include "mvsk/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mvsk/errors.hpp"

namespace mvsk {
namespace {

constexpr int kMaxStepExpansions = 50;
constexpr int kMaxBacktracks = 200;

Eigen::VectorXd default_start(int n, const Domain& domain) {
    if (domain.kind == DomainKind::Cube) return Eigen::VectorXd::Zero(n);
    if (!domain.support) return Eigen::VectorXd::Constant(n, 1.0 / n);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int i : *domain.support) x(i) = 1.0 / static_cast<double>(domain.support->size());
    return x;
}

double infeasibility(const Eigen::VectorXd& w, const Domain& domain) {
    double worst = 0.0;
    auto outside = [&](int i) {
        if (!domain.support) return false;
        for (int s : *domain.support)
            if (s == i) return false;
        return true;
    };
    if (domain.kind == DomainKind::Simplex) {
        worst = std::abs(w.sum() - 1.0);
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            worst = std::max(worst, -w(i));
            if (outside(static_cast<int>(i))) worst = std::max(worst, std::abs(w(i)));
        }
    } else {
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            worst = std::max(worst, std::abs(w(i)) - domain.cube_bound);
            if (outside(static_cast<int>(i))) worst = std::max(worst, std::abs(w(i)));
        }
    }
    return worst;
}

// Sufficient decrease against the quadratic upper model at y with step t.
bool upper_model_holds(double fp, double fy, const Eigen::VectorXd& grad, const Eigen::VectorXd& d, double step) {
    const double model = fy + grad.dot(d) + d.squaredNorm() / (2.0 * step);
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(fy) + std::abs(fp));
    return fp <= model + slack;
}

} // namespace

void SolverOptions::validate() const {
    if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
    if (!(backtracking_factor > 1.0)) throw DomainError("backtracking_factor must exceed 1");
    if (!(initial_step > 0.0)) throw DomainError("initial_step must be positive");
    if (!(stationarity_tolerance >= 0.0)) throw DomainError("stationarity_tolerance must be nonnegative");
}

std::vector<int> support_of(const Eigen::VectorXd& w, double epsilon) {
    std::vector<int> s;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (std::abs(w(i)) > epsilon) s.push_back(static_cast<int>(i));
    return s;
}

SolveResult solve(const MomentEvaluator& evaluator, const LambdaPoint& lambda, const Domain& domain,
                  const SolverOptions& opts, const std::optional<Eigen::VectorXd>& warm_start) {
    opts.validate();
    const int n = evaluator.n();
    domain.validate(n);
    const Weights& lam = lambda;

    Eigen::VectorXd x;
    if (warm_start) {
        if (warm_start->size() != n) throw DimensionError("warm start has wrong length");
        if (!warm_start->allFinite()) throw DomainError("warm start must be finite");
        x = project(*warm_start, domain);
    } else {
        x = default_start(n, domain);
    }

    auto require_finite = [](int iteration, double value, const Eigen::VectorXd* grad) {
        if (!std::isfinite(value)) throw NumericalError(iteration, "non-finite objective value");
        if (grad && !grad->allFinite()) throw NumericalError(iteration, "non-finite gradient");
    };

    SolveResult result;
    Eigen::VectorXd y = x;
    Eigen::VectorXd grad;
    double fy = evaluator.value_and_gradient(lam, y, grad);
    require_finite(0, fy, &grad);

    Eigen::VectorXd best = x;
    double best_value = fy;
    double step = opts.initial_step;

    for (int e = 0; e < kMaxStepExpansions; ++e) {
        const double trial = step * opts.backtracking_factor;
        const Eigen::VectorXd p = project(y - trial * grad, domain);
        const double fp = evaluator.value(lam, p);
        if (!std::isfinite(fp) || !upper_model_holds(fp, fy, grad, p - y, trial)) break;
        step = trial;
    }

    if (opts.record_trace) {
        result.trace.reserve(static_cast<std::size_t>(opts.max_iterations));
        result.best_trace.reserve(static_cast<std::size_t>(opts.max_iterations));
    }
    double max_infeasibility = 0.0;
    double t = 1.0;
    Eigen::VectorXd p;
    for (int k = 1; k <= opts.max_iterations; ++k) {
        if (k > 1) {
            fy = evaluator.value_and_gradient(lam, y, grad);
            require_finite(k, fy, &grad);
        }
        double fp = 0.0;
        for (int bt = 0;; ++bt) {
            p = project(y - step * grad, domain);
            fp = evaluator.value(lam, p);
            require_finite(k, fp, nullptr);
            if (upper_model_holds(fp, fy, grad, p - y, step) || bt >= kMaxBacktracks) break;
            step /= opts.backtracking_factor;
        }
        const double mapping_norm = (y - p).norm() / step;

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        y = p + ((t - 1.0) / t_next) * (p - x);
        x = p;
        t = t_next;

        if (fp <= best_value) { // ties go to the later, usually more accurate, iterate
            best_value = fp;
            best = p;
        }
        if (opts.record_trace) {
            result.trace.push_back(fp);
            result.best_trace.push_back(best_value);
            max_infeasibility = std::max(max_infeasibility, infeasibility(p, domain));
        }
        result.iterations_used = k;
        // The cheap test at y only triggers the real one at the returned point.
        if (opts.stationarity_tolerance > 0.0 && mapping_norm <= opts.stationarity_tolerance) {
            Eigen::VectorXd g;
            evaluator.value_and_gradient(lam, best, g);
            if ((best - project(best - step * g, domain)).norm() / step <= opts.stationarity_tolerance) break;
        }
    }

    Eigen::VectorXd best_grad;
    result.scalarized_value = evaluator.value_and_gradient(lam, best, best_grad);
    require_finite(result.iterations_used, result.scalarized_value, &best_grad);
    result.projected_gradient_norm = (best - project(best - step * best_grad, domain)).norm() / step;
    result.final_step = step;
    result.objectives = evaluator.objectives(best);
    result.support = support_of(best);
    result.max_iterate_infeasibility = max_infeasibility;
    result.w = std::move(best);
    return result;
}

SolveResult solve(const MomentModel& model, const LambdaPoint& lambda, const Domain& domain,
                  const SolverOptions& opts, const std::optional<Eigen::VectorXd>& warm_start) {
    const MomentEvaluator evaluator(model);
    return solve(evaluator, lambda, domain, opts, warm_start);
}

double scalarized_reference(const MomentEvaluator& evaluator, const LambdaPoint& lambda, const Domain& domain,
                            int budget, const std::optional<Eigen::VectorXd>& warm_start) {
    SolverOptions opts;
    opts.max_iterations = budget;
    return solve(evaluator, lambda, domain, opts, warm_start).scalarized_value;
}

} // namespace mvsk

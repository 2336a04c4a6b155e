#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library code it is used to check, except where noted.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mvsk/moments.hpp"
#include "mvsk/objective.hpp"
#include "mvsk/projection.hpp"

namespace oracle {

using Rng = std::mt19937_64;

inline mvsk::ReturnsMatrix random_returns(Rng& rng, int n, int m, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    mvsk::ReturnsMatrix r;
    r.values.resize(n, m);
    for (int i = 0; i < n; ++i) {
        const double skew = unit(rng) - 0.5;
        for (int p = 0; p < m; ++p) {
            const double z = normal(rng);
            r.values(i, p) = scale * (0.1 * (unit(rng) - 0.3) + z + skew * z * z);
        }
        r.asset_labels.push_back("a" + std::to_string(i));
    }
    return r;
}

inline mvsk::MomentModel random_model(Rng& rng, int n, int m, double scale = 1.0) {
    return mvsk::build_moment_model(random_returns(rng, n, m, scale));
}

/// Uniform point of the simplex via normalized exponentials.
inline Eigen::VectorXd random_simplex_point(Rng& rng, int n) {
    std::exponential_distribution<double> e(1.0);
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w(i) = e(rng);
    return w / w.sum();
}

inline Eigen::VectorXd random_vector(Rng& rng, int n, double sd = 1.0) {
    std::normal_distribution<double> normal(0.0, sd);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = normal(rng);
    return x;
}

inline mvsk::Weights random_lambda(Rng& rng) {
    const Eigen::VectorXd v = random_simplex_point(rng, 4);
    return {v(0), v(1), v(2), v(3)};
}

/// Co-moments by plain nested sums over the samples.
struct NaiveMoments {
    Eigen::VectorXd mean;
    Eigen::MatrixXd centered;
    double var(int i, int j) const { return sum_prod({i, j}) / (m() - 1.0); }
    double skew(int i, int j, int k) const { return sum_prod({i, j, k}) / m(); }
    double kurt(int i, int j, int k, int l) const { return sum_prod({i, j, k, l}) / m(); }

    double m() const { return static_cast<double>(centered.cols()); }
    double sum_prod(std::initializer_list<int> idx) const {
        double s = 0.0;
        for (Eigen::Index p = 0; p < centered.cols(); ++p) {
            double prod = 1.0;
            for (int i : idx) prod *= centered(i, p);
            s += prod;
        }
        return s;
    }
};

inline NaiveMoments naive_moments(const Eigen::MatrixXd& raw) {
    NaiveMoments nm;
    const Eigen::Index n = raw.rows();
    const Eigen::Index m = raw.cols();
    nm.mean = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index p = 0; p < m; ++p) nm.mean(i) += raw(i, p);
        nm.mean(i) /= static_cast<double>(m);
    }
    nm.centered = raw;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index p = 0; p < m; ++p) nm.centered(i, p) -= nm.mean(i);
    return nm;
}

/// Objectives in sample form: sums of powers of the portfolio's centered return.
inline mvsk::ObjectiveValues sample_objectives(const Eigen::MatrixXd& raw, const Eigen::VectorXd& w) {
    const NaiveMoments nm = naive_moments(raw);
    const double m = nm.m();
    mvsk::ObjectiveValues f;
    f.f1 = nm.mean.dot(w);
    for (Eigen::Index p = 0; p < nm.centered.cols(); ++p) {
        const double y = nm.centered.col(p).dot(w);
        f.f2 += y * y / (m - 1.0);
        f.f3 += y * y * y / m;
        f.f4 += y * y * y * y / m;
    }
    return f;
}

inline double sample_scalarized(const Eigen::MatrixXd& raw, const mvsk::Weights& l, const Eigen::VectorXd& w) {
    const auto f = sample_objectives(raw, w);
    return -l[0] * f.f1 + l[1] * f.f2 - l[2] * f.f3 + l[3] * f.f4;
}

template <class F>
Eigen::VectorXd central_difference(F&& f, const Eigen::VectorXd& x, double h) {
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Eigen::VectorXd a = x;
        Eigen::VectorXd b = x;
        a(i) += h;
        b(i) -= h;
        g(i) = (f(a) - f(b)) / (2.0 * h);
    }
    return g;
}

/// Jacobian of a vector field by central differences (column i = d/dx_i).
template <class G>
Eigen::MatrixXd central_jacobian(G&& g, const Eigen::VectorXd& x, double h) {
    Eigen::MatrixXd J(x.size(), x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Eigen::VectorXd a = x;
        Eigen::VectorXd b = x;
        a(i) += h;
        b(i) -= h;
        J.col(i) = (g(a) - g(b)) / (2.0 * h);
    }
    return J;
}

inline double relative_error(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
    return (got - want).norm() / std::max(1.0, want.norm());
}

/// KKT conditions of min ||x - y||^2 over the simplex: y feasible, and one
/// multiplier theta with x_i - y_i = theta where y_i > 0 and x_i - y_i <= theta
/// where y_i = 0.
inline bool simplex_kkt_holds(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double tol) {
    if (std::abs(y.sum() - 1.0) > tol || y.minCoeff() < -tol) return false;
    double theta = 0.0;
    int active = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y(i) > tol) {
            theta += x(i) - y(i);
            ++active;
        }
    }
    if (active == 0) return false;
    theta /= active;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double r = x(i) - y(i);
        if (y(i) > tol) {
            if (std::abs(r - theta) > tol) return false;
        } else if (r > theta + tol) {
            return false;
        }
    }
    return true;
}

/// Monotone projected gradient with Armijo backtracking, driven by the
/// sample-form objective and its full-tensor gradient. Slow but simple; used
/// as an optimum oracle on small convex problems. Uses the library's simplex
/// projection (checked against the KKT oracle separately).
inline double projected_gradient_oracle(const mvsk::MomentModel& model, const mvsk::Weights& lambda,
                                        const mvsk::Domain& domain, Eigen::VectorXd x, int iterations) {
    x = mvsk::project(x, domain);
    double fx = mvsk::eval_scalarized(model, lambda, x);
    double step = 1.0;
    for (int k = 0; k < iterations; ++k) {
        const Eigen::VectorXd g = mvsk::gradient(model, lambda, x);
        step *= 4.0;
        while (true) {
            const Eigen::VectorXd p = mvsk::project(x - step * g, domain);
            const double fp = mvsk::eval_scalarized(model, lambda, p);
            if (fp <= fx - 0.5 / step * (p - x).squaredNorm() + 1e-18 || step < 1e-20) {
                if ((p - x).norm() < 1e-15) return std::min(fx, fp);
                x = p;
                fx = fp;
                break;
            }
            step *= 0.5;
        }
    }
    return fx;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return c;
}

/// All size-k subsets of {0..n-1}, lexicographic.
inline std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) s.push_back(i);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace oracle

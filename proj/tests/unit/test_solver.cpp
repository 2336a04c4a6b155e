#include <cmath>
#include <limits>

#include "doctest.h"
#include "mvsk/convexity.hpp"
#include "mvsk/errors.hpp"
#include "mvsk/solver.hpp"
#include "mvsk/synth.hpp"
#include "oracles.hpp"

using namespace mvsk;

namespace {

MomentModel quadratic_model(const Eigen::VectorXd& diag) {
    MomentModel m;
    m.n = static_cast<int>(diag.size());
    m.m = 2;
    m.mean = Eigen::VectorXd::Zero(m.n);
    m.covariance = diag.asDiagonal();
    m.coskewness = Eigen::MatrixXd::Zero(m.n * m.n, m.n);
    m.cokurtosis = Eigen::MatrixXd::Zero(m.n * m.n, m.n * m.n);
    return m;
}

struct ConvexCase {
    MomentModel model;
    LambdaPoint lambda{1, 0, 0, 0};
};

// Random model and a lambda certified convex on the simplex for its data.
ConvexCase convex_case(oracle::Rng& rng, int n, double scale) {
    const auto raw = oracle::random_returns(rng, n, 30, scale);
    const auto bounds = domain_bounds(centralize(raw), DomainKind::Simplex);
    while (true) {
        const auto l = LambdaPoint(oracle::random_lambda(rng));
        if (classify_lambda(l, bounds) != RegionLabel::Unknown) return {build_moment_model(raw), l};
    }
}

} // namespace

TEST_CASE("two-asset quadratic has the analytic minimizer") {
    const auto model = quadratic_model(Eigen::Vector2d(1, 2));
    const auto r = solve(model, {0, 1, 0, 0}, Domain::simplex());
    CHECK(std::abs(r.w(0) - 2.0 / 3) <= 1e-6);
    CHECK(std::abs(r.w(1) - 1.0 / 3) <= 1e-6);
    CHECK(r.objectives.f2 == doctest::Approx(2.0 / 3).epsilon(1e-10));

    // grid search over the segment
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100000; ++i) {
        const double a = i / 100000.0;
        best = std::min(best, a * a + 2 * (1 - a) * (1 - a));
    }
    CHECK(r.scalarized_value <= best + 1e-12);

    const MomentEvaluator ev(model);
    CHECK(std::abs(scalarized_reference(ev, {0, 1, 0, 0}, Domain::simplex()) - 2.0 / 3) <= 1e-10);
}

TEST_CASE("linear objective picks the best vertex") {
    oracle::Rng rng(51);
    for (int t = 0; t < 10; ++t) {
        const auto model = oracle::random_model(rng, 5, 20);
        Eigen::Index best = 0;
        model.mean.maxCoeff(&best);
        const auto r = solve(model, {1, 0, 0, 0}, Domain::simplex());
        CHECK(r.w(best) == doctest::Approx(1.0));
        CHECK(r.support == std::vector<int>{static_cast<int>(best)});
        CHECK(scalarized_reference(MomentEvaluator(model), {1, 0, 0, 0}, Domain::simplex()) == -model.mean.maxCoeff());
    }
}

TEST_CASE("interior minimum in the cube") {
    const auto model = quadratic_model(Eigen::Vector3d(1, 1, 1));
    const auto r = solve(model, {0, 1, 0, 0}, Domain::cube(1.0), {}, Eigen::Vector3d(0.9, -0.4, 0.3));
    CHECK(r.w.norm() <= 1e-10);
}

TEST_CASE("result invariants") {
    oracle::Rng rng(52);
    for (int t = 0; t < 10; ++t) {
        const int n = 2 + t % 6;
        const auto model = oracle::random_model(rng, n, 25);
        const LambdaPoint l(oracle::random_lambda(rng));
        SolverOptions opts;
        opts.record_trace = true;
        opts.max_iterations = 300;
        for (const Domain& d : {Domain::simplex(), Domain::cube(0.7)}) {
            const auto r = solve(model, l, d, opts, oracle::random_vector(rng, n));
            CHECK(r.max_iterate_infeasibility <= 1e-10);
            CHECK(std::abs(r.scalarized_value - eval_scalarized(model, l, r.w)) <= 1e-12 * std::max(1.0, std::abs(r.scalarized_value)));
            CHECK(r.support == support_of(r.w));
            CHECK(r.trace.size() == static_cast<std::size_t>(r.iterations_used));
            for (std::size_t k = 1; k < r.best_trace.size(); ++k) CHECK(r.best_trace[k] <= r.best_trace[k - 1]);
            CHECK(r.scalarized_value <= r.best_trace.back());
        }
    }
}

TEST_CASE("solver reaches the oracle optimum on convex instances") {
    oracle::Rng rng(53);
    for (int t = 0; t < 12; ++t) {
        const int n = 2 + t % 7;
        const auto c = convex_case(rng, n, 0.3);
        const MomentEvaluator ev(c.model);
        const auto r = solve(ev, c.lambda, Domain::simplex());
        const double pgd = oracle::projected_gradient_oracle(c.model, c.lambda, Domain::simplex(),
                                                             Eigen::VectorXd::Constant(n, 1.0 / n), 20000);
        CHECK(r.scalarized_value <= pgd + 1e-9 * (1 + std::abs(pgd)));
        CHECK(r.scalarized_value - scalarized_reference(ev, c.lambda, Domain::simplex()) <= 1e-6 * (1 + std::abs(pgd)));
    }
}

TEST_CASE("daily-scale data converges within the default budget") {
    const auto raw = synthesize_returns({8, 300, 3});
    const auto model = build_moment_model(raw);
    const MomentEvaluator ev(model);
    const auto bounds = domain_bounds(centralize(raw), DomainKind::Simplex);
    oracle::Rng rng(54);
    int checked = 0;
    while (checked < 10) {
        const LambdaPoint l(oracle::random_lambda(rng));
        if (classify_lambda(l, bounds) == RegionLabel::Unknown) continue;
        const auto r = solve(ev, l, Domain::simplex());
        CHECK(r.projected_gradient_norm <= 1e-6);
        const double ref = scalarized_reference(ev, l, Domain::simplex());
        CHECK(r.scalarized_value - ref <= 1e-12);
        ++checked;
    }
}

TEST_CASE("warm starts do not change the optimum on globally convex lambdas") {
    oracle::Rng rng(55);
    const auto model = oracle::random_model(rng, 6, 30, 0.5);
    const MomentEvaluator ev(model);
    const LambdaPoint l(0.1, 0.3, 0.3, 0.3);
    REQUIRE(evaluate_conditions(l, {}).global);
    SolverOptions opts;
    opts.max_iterations = 5000;
    const double cold = solve(ev, l, Domain::simplex(), opts).scalarized_value;
    for (int t = 0; t < 5; ++t) {
        const double warm = solve(ev, l, Domain::simplex(), opts, oracle::random_vector(rng, 6, 3.0)).scalarized_value;
        CHECK(std::abs(warm - cold) <= 1e-8);
    }
}

TEST_CASE("best-so-far gap stays inside the accelerated rate envelope") {
    oracle::Rng rng(56);
    for (int t = 0; t < 8; ++t) {
        const int n = 3 + t % 5;
        const auto c = convex_case(rng, n, 0.3);
        const MomentEvaluator ev(c.model);
        SolverOptions opts;
        opts.record_trace = true;
        opts.max_iterations = 1000;
        const auto r = solve(ev, c.lambda, Domain::simplex(), opts);
        SolverOptions ref_opts;
        ref_opts.max_iterations = 20000;
        const auto star = solve(ev, c.lambda, Domain::simplex(), ref_opts);
        const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(n, 1.0 / n);
        const double C = 2.0 / r.final_step * (x0 - star.w).squaredNorm();
        for (int k : {10, 100, 1000}) {
            const double gap = r.best_trace[static_cast<std::size_t>(k - 1)] - star.scalarized_value;
            CHECK(gap <= C / ((k + 1.0) * (k + 1.0)) + 1e-12);
        }
    }
}

TEST_CASE("stationarity tolerance stops early") {
    const auto model = quadratic_model(Eigen::Vector2d(1, 2));
    SolverOptions opts;
    opts.stationarity_tolerance = 1e-9;
    const auto r = solve(model, {0, 1, 0, 0}, Domain::simplex(), opts);
    CHECK(r.iterations_used < opts.max_iterations);
    CHECK(r.projected_gradient_norm <= 1e-9);
}

TEST_CASE("solver errors") {
    auto model = quadratic_model(Eigen::Vector2d(1, 2));
    SolverOptions bad;
    bad.max_iterations = 0;
    CHECK_THROWS_AS(solve(model, {0, 1, 0, 0}, Domain::simplex(), bad), DomainError);
    CHECK_THROWS_AS(solve(model, {0, 1, 0, 0}, Domain::simplex(), {}, Eigen::Vector3d(1, 0, 0)), DimensionError);
    model.covariance(0, 0) = std::numeric_limits<double>::quiet_NaN();
    try {
        solve(model, {0, 1, 0, 0}, Domain::simplex());
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.iteration() == 0);
    }
}

TEST_CASE("restricted domains keep the iterates on the face") {
    oracle::Rng rng(57);
    const auto model = oracle::random_model(rng, 5, 20);
    Domain face;
    face.support = std::vector<int>{1, 3};
    const auto r = solve(model, {0.2, 0.4, 0.2, 0.2}, face);
    CHECK(r.w(0) == 0.0);
    CHECK(r.w(2) == 0.0);
    CHECK(r.w(4) == 0.0);
    CHECK(r.w.sum() == doctest::Approx(1.0));
}

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mvsk/convexity.hpp"
#include "mvsk/errors.hpp"
#include "mvsk/io.hpp"
#include "mvsk/moments.hpp"
#include "mvsk/objective.hpp"
#include "mvsk/projection.hpp"
#include "mvsk/solver.hpp"
#include "mvsk/sparse.hpp"
#include "mvsk/sweep.hpp"
#include "mvsk/synth.hpp"

namespace py = pybind11;
using namespace mvsk;

namespace {

Domain make_domain(const std::string& kind, double cube_bound) {
    if (kind == "simplex") return Domain::simplex();
    if (kind == "cube") return Domain::cube(cube_bound);
    throw DomainError("domain must be 'simplex' or 'cube', got '" + kind + "'");
}

ReturnsMatrix as_returns(const Eigen::MatrixXd& values, std::vector<std::string> labels) {
    ReturnsMatrix r;
    r.values = values;
    r.asset_labels = std::move(labels);
    return r;
}

py::dict to_dict(const ObjectiveValues& f) {
    py::dict d;
    d["f1"] = f.f1;
    d["f2"] = f.f2;
    d["f3"] = f.f3;
    d["f4"] = f.f4;
    return d;
}

py::dict to_dict(const SolveResult& r) {
    py::dict d;
    d["w"] = r.w;
    d["objectives"] = to_dict(r.objectives);
    d["scalarized_value"] = r.scalarized_value;
    d["iterations_used"] = r.iterations_used;
    d["projected_gradient_norm"] = r.projected_gradient_norm;
    d["final_step"] = r.final_step;
    d["support"] = r.support;
    if (!r.trace.empty()) d["trace"] = r.trace;
    return d;
}

SolverOptions solver_options(int max_iterations, double tolerance, bool trace) {
    SolverOptions o;
    o.max_iterations = max_iterations;
    o.stationarity_tolerance = tolerance;
    o.record_trace = trace;
    return o;
}

} // namespace

PYBIND11_MODULE(_mvsk, m) {
    m.doc() = "Mean-variance-skewness-kurtosis portfolio fronts (native core)";

    py::register_exception<Error>(m, "MvskError", PyExc_ValueError);

    py::class_<MomentModel>(m, "MomentModel")
        .def_readonly("n", &MomentModel::n)
        .def_readonly("m", &MomentModel::m)
        .def_readonly("mean", &MomentModel::mean)
        .def_readonly("covariance", &MomentModel::covariance)
        .def_readonly("coskewness", &MomentModel::coskewness, "n^2 x n, row i*n+j, column k")
        .def_readonly("cokurtosis", &MomentModel::cokurtosis, "n^2 x n^2, row i*n+j, column k*n+l")
        .def("objectives",
             [](const MomentModel& model, const Eigen::VectorXd& w) { return to_dict(eval_objectives(model, w)); })
        .def("scalarized", [](const MomentModel& model, const Weights& l,
                              const Eigen::VectorXd& w) { return eval_scalarized(model, l, w); })
        .def("gradient", [](const MomentModel& model, const Weights& l,
                            const Eigen::VectorXd& w) { return gradient(model, l, w); })
        .def("hessian", [](const MomentModel& model, const Weights& l,
                           const Eigen::VectorXd& w) { return hessian(model, l, w); })
        .def("fingerprint", [](const MomentModel& model) { return fingerprint_hex(model); })
        .def("__repr__", [](const MomentModel& model) {
            return "<MomentModel n=" + std::to_string(model.n) + " m=" + std::to_string(model.m) + ">";
        });

    m.def(
        "load_returns",
        [](const std::string& path, bool prices) {
            const auto r = load_returns_file(path, prices);
            return py::make_tuple(r.values, r.asset_labels);
        },
        py::arg("path"), py::arg("prices") = false, "Read a CSV; returns (n x m array, labels).");

    m.def(
        "build_model", [](const Eigen::MatrixXd& returns) { return build_moment_model(as_returns(returns, {})); },
        py::arg("returns"), "Moment tensors of an n x m return matrix (rows are assets).");

    m.def(
        "read_model", [](const std::string& path) { return read_model(path).model; }, py::arg("path"));

    m.def(
        "write_model",
        [](const std::string& path, const Eigen::MatrixXd& returns, std::vector<std::string> labels) {
            const auto raw = as_returns(returns, std::move(labels));
            write_model(path, {build_moment_model(raw), raw.asset_labels, compute_data_bounds(raw)});
        },
        py::arg("path"), py::arg("returns"), py::arg("labels") = std::vector<std::string>{});

    m.def(
        "domain_bounds",
        [](const Eigen::MatrixXd& returns, const std::string& domain, double cube_bound) {
            const auto kind = make_domain(domain, cube_bound).kind;
            const Bounds b = domain_bounds(centralize(as_returns(returns, {})), kind, cube_bound);
            return py::make_tuple(b.lower, b.upper);
        },
        py::arg("returns"), py::arg("domain") = "simplex", py::arg("cube_bound") = 1.0);

    m.def(
        "classify",
        [](const Weights& lambda, double lower, double upper) {
            return to_string(classify_lambda(lambda, Bounds{lower, upper}));
        },
        py::arg("lam"), py::arg("lower"), py::arg("upper"));

    m.def(
        "region_volume",
        [](double lower, double upper, const std::string& target, int resolution) {
            RegionTarget t;
            if (target == "global") t = RegionTarget::GlobalConvex;
            else if (target == "domain") t = RegionTarget::DomainConvex;
            else throw DomainError("target must be 'global' or 'domain'");
            return region_volume(Bounds{lower, upper}, t, resolution);
        },
        py::arg("lower"), py::arg("upper"), py::arg("target") = "domain", py::arg("resolution") = 200);

    m.def("psi", &psi, py::arg("lam"), py::arg("y"));

    m.def("project_simplex", &project_simplex, py::arg("x"));
    m.def("project_cube", &project_cube, py::arg("x"), py::arg("bound") = 1.0);

    m.def(
        "solve",
        [](const MomentModel& model, const Weights& lambda, const std::string& domain, double cube_bound,
           int max_iterations, double tolerance, bool trace, std::optional<Eigen::VectorXd> warm_start) {
            const auto l = LambdaPoint::normalized(lambda);
            const auto d = make_domain(domain, cube_bound);
            SolveResult r;
            {
                py::gil_scoped_release release;
                r = solve(model, l, d, solver_options(max_iterations, tolerance, trace), warm_start);
            }
            return to_dict(r);
        },
        py::arg("model"), py::arg("lam"), py::arg("domain") = "simplex", py::arg("cube_bound") = 1.0,
        py::arg("max_iterations") = 2000, py::arg("tolerance") = 0.0, py::arg("trace") = false,
        py::arg("warm_start") = py::none());

    m.def(
        "solve_sparse",
        [](const MomentModel& model, const Weights& lambda, int k, const std::string& domain, double cube_bound,
           bool heuristics, std::vector<std::pair<int, int>> forbidden_pairs, int max_iterations) {
            SparseOptions opts = heuristics ? SparseOptions{} : SparseOptions::exhaustive(k);
            opts.k = k;
            opts.forbidden_pairs = std::move(forbidden_pairs);
            const auto so = solver_options(max_iterations, 0.0, false);
            const auto l = LambdaPoint::normalized(lambda);
            const auto d = make_domain(domain, cube_bound);
            SolveResult r;
            {
                py::gil_scoped_release release;
                const MomentEvaluator ev(model);
                r = solve_sparse(ev, l, d, opts, solve(ev, l, d, so), so);
            }
            return to_dict(r);
        },
        py::arg("model"), py::arg("lam"), py::arg("k"), py::arg("domain") = "simplex", py::arg("cube_bound") = 1.0,
        py::arg("heuristics") = true, py::arg("forbidden_pairs") = std::vector<std::pair<int, int>>{},
        py::arg("max_iterations") = 2000);

    m.def(
        "build_grid",
        [](int s, bool lambda1_filter) {
            const auto g = build_grid(s, lambda1_filter);
            Eigen::MatrixXd out(static_cast<Eigen::Index>(g.size()), 4);
            for (std::size_t i = 0; i < g.size(); ++i)
                for (int j = 0; j < 4; ++j) out(static_cast<Eigen::Index>(i), j) = g.points[i][j];
            return out;
        },
        py::arg("s"), py::arg("lambda1_filter") = true, "Grid points as a rows x 4 array.");

    m.def(
        "sweep_json",
        [](const MomentModel& model, int s, const std::string& domain, double cube_bound,
           std::optional<std::pair<double, double>> bounds, int sparse_k, int jobs, bool lambda1_filter, double eta,
           int max_iterations) {
            const auto d = make_domain(domain, cube_bound);
            SweepOptions so;
            so.jobs = jobs;
            if (bounds) so.bounds = Bounds{bounds->first, bounds->second};
            if (sparse_k > 0) {
                SparseOptions sp;
                sp.k = sparse_k;
                so.sparse = sp;
            }
            SweepMeta meta;
            meta.eta = eta;
            meta.data_fingerprint = fingerprint_hex(model);
            meta.lambda1_filter = lambda1_filter;
            meta.max_iterations = max_iterations;
            std::string text;
            {
                py::gil_scoped_release release;
                const auto sweep = scale_values(run_sweep(MomentEvaluator(model), d, build_grid(s, lambda1_filter),
                                                          solver_options(max_iterations, 0.0, false), so));
                text = sweep_to_json(sweep, meta).dump();
            }
            return text;
        },
        py::arg("model"), py::arg("s") = 10, py::arg("domain") = "simplex", py::arg("cube_bound") = 1.0,
        py::arg("bounds") = py::none(), py::arg("sparse_k") = 0, py::arg("jobs") = 1, py::arg("lambda1_filter") = true,
        py::arg("eta") = 0.01, py::arg("max_iterations") = 2000, "Sweep document as a JSON string.");

    m.def(
        "synthesize",
        [](int n, int samples, std::uint64_t seed) { return synthesize_returns({n, samples, seed}).values; },
        py::arg("n") = 20, py::arg("m") = 500, py::arg("seed") = 1, "Synthetic n x m daily returns.");
}

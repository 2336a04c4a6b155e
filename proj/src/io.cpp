#include "mvsk/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mvsk/errors.hpp"

namespace mvsk {
namespace {

using nlohmann::json;

json vector_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json flat_json(const Eigen::MatrixXd& m) {
    json a = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(m(r, c));
    return a;
}

Eigen::MatrixXd matrix_from_flat(const json& a, Eigen::Index rows, Eigen::Index cols, const char* name) {
    if (!a.is_array() || a.size() != static_cast<std::size_t>(rows * cols)) {
        throw DimensionError(std::string("model field '") + name + "' has the wrong number of entries");
    }
    Eigen::MatrixXd m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = a[k++].get<double>();
    return m;
}

json bounds_json(const Bounds& b) { return {{"lower", b.lower}, {"upper", b.upper}}; }

json lambda_json(const LambdaPoint& l) { return json::array({l[0], l[1], l[2], l[3]}); }

json objectives_json(const ObjectiveValues& f) { return json::array({f.f1, f.f2, f.f3, f.f4}); }

std::string csv_lambda(const LambdaPoint& l) {
    return format_double(l[0]) + "," + format_double(l[1]) + "," + format_double(l[2]) + "," + format_double(l[3]);
}

} // namespace

Bounds DataBounds::for_domain(const Domain& domain) const {
    if (domain.kind == DomainKind::Simplex) return simplex;
    const double up = cube_unit_upper * domain.cube_bound;
    return {-up, up};
}

DataBounds compute_data_bounds(const ReturnsMatrix& raw) {
    const auto t = centralize(raw);
    return {domain_bounds(t, DomainKind::Simplex), domain_bounds(t, DomainKind::Cube, 1.0).upper};
}

json model_to_json(const ModelFile& file) {
    const auto& m = file.model;
    json j;
    j["layout"] = kModelLayout;
    j["n"] = m.n;
    j["m"] = m.m;
    j["asset_labels"] = file.asset_labels;
    j["mean"] = vector_json(m.mean);
    json cov = json::array();
    for (Eigen::Index r = 0; r < m.covariance.rows(); ++r) cov.push_back(vector_json(m.covariance.row(r).transpose()));
    j["covariance"] = std::move(cov);
    j["coskewness_flat"] = flat_json(m.coskewness);
    j["cokurtosis_flat"] = flat_json(m.cokurtosis);
    if (file.bounds) {
        j["bounds"] = {{"simplex", bounds_json(file.bounds->simplex)},
                       {"cube_unit", bounds_json({-file.bounds->cube_unit_upper, file.bounds->cube_unit_upper})}};
    }
    return j;
}

ModelFile model_from_json(const json& j) {
    ModelFile file;
    auto& m = file.model;
    try {
        m.n = j.at("n").get<int>();
        m.m = j.at("m").get<int>();
        if (m.n < 1 || m.n > kMaxAssets) throw DimensionError("model n out of range");
        if (m.m < 2) throw InsufficientSamples("model m must be >= 2");
        const Eigen::Index n = m.n;
        m.mean = matrix_from_flat(j.at("mean"), n, 1, "mean");
        json cov_flat = json::array();
        for (const auto& row : j.at("covariance")) {
            if (!row.is_array()) throw DimensionError("covariance must be an array of rows");
            for (const auto& v : row) cov_flat.push_back(v);
        }
        m.covariance = matrix_from_flat(cov_flat, n, n, "covariance");
        m.coskewness = matrix_from_flat(j.at("coskewness_flat"), n * n, n, "coskewness_flat");
        m.cokurtosis = matrix_from_flat(j.at("cokurtosis_flat"), n * n, n * n, "cokurtosis_flat");
        if (j.contains("asset_labels")) file.asset_labels = j["asset_labels"].get<std::vector<std::string>>();
        if (j.contains("bounds")) {
            const auto& b = j["bounds"];
            DataBounds db;
            db.simplex = {b.at("simplex").at("lower").get<double>(), b.at("simplex").at("upper").get<double>()};
            db.cube_unit_upper = b.at("cube_unit").at("upper").get<double>();
            file.bounds = db;
        }
    } catch (const json::exception& e) {
        throw Error(std::string("malformed model JSON: ") + e.what());
    }
    return file;
}

void write_model(const std::string& path, const ModelFile& file) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write model file '" + path + "'");
    out << model_to_json(file).dump() << '\n';
}

ModelFile read_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("model file '" + path + "' is not valid JSON: " + e.what());
    }
    return model_from_json(j);
}

std::uint64_t fingerprint(const MomentModel& model) {
    std::uint64_t h = 14695981039346656037ull;
    auto mix_bytes = [&](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 1099511628211ull;
        }
    };
    const std::int64_t dims[2] = {model.n, model.m};
    mix_bytes(dims, sizeof dims);
    for (const Eigen::MatrixXd* t : {&model.covariance, &model.coskewness, &model.cokurtosis})
        mix_bytes(t->data(), static_cast<std::size_t>(t->size()) * sizeof(double));
    mix_bytes(model.mean.data(), static_cast<std::size_t>(model.mean.size()) * sizeof(double));
    return h;
}

std::string fingerprint_hex(const MomentModel& model) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fingerprint(model)));
    return buf;
}

json solve_result_to_json(const SolveResult& r, const LambdaPoint& lambda, const Domain& domain) {
    json j;
    j["lambda"] = lambda_json(lambda);
    j["domain"] = domain.describe();
    j["w"] = vector_json(r.w);
    j["objectives"] = {{"f1", r.objectives.f1}, {"f2", r.objectives.f2}, {"f3", r.objectives.f3},
                       {"f4", r.objectives.f4}};
    j["scalarized_value"] = r.scalarized_value;
    j["iterations_used"] = r.iterations_used;
    j["projected_gradient_norm"] = r.projected_gradient_norm;
    j["final_step"] = r.final_step;
    j["support"] = r.support;
    j["support_size"] = r.support.size();
    if (!r.trace.empty()) j["trace"] = r.trace;
    return j;
}

json sweep_to_json(const SweepResult& sweep, const SweepMeta& meta) {
    if (!sweep.scaled) throw DomainError("sweep_to_json needs scaled values");
    json j;
    j["meta"] = {{"s", sweep.grid.s},
                 {"domain", sweep.domain.describe()},
                 {"sparse_k", sweep.sparse_k ? json(*sweep.sparse_k) : json(nullptr)},
                 {"eta", meta.eta},
                 {"data_fingerprint", meta.data_fingerprint},
                 {"lambda1_filter", meta.lambda1_filter},
                 {"max_iterations", meta.max_iterations},
                 {"seed", meta.seed},
                 {"count", sweep.entries.size()},
                 {"failures", sweep.failures()}};
    json grid = json::array();
    for (const auto& p : sweep.grid.points) grid.push_back(lambda_json(p));
    j["grid"] = std::move(grid);

    json results = json::array();
    for (const auto& e : sweep.entries) {
        json r;
        r["lambda"] = lambda_json(e.lambda);
        r["region_label"] = to_string(e.region);
        if (e.ok()) {
            r["w"] = vector_json(e.result->w);
            r["f"] = objectives_json(e.result->objectives);
            r["scaled"] = json::array({e.scaled[0], e.scaled[1], e.scaled[2], e.scaled[3]});
            r["aggregate"] = e.aggregate;
            r["scalarized_value"] = e.result->scalarized_value;
            r["support_size"] = e.result->support.size();
            r["converged"] = e.converged();
        } else {
            r["w"] = nullptr;
            r["f"] = nullptr;
            r["scaled"] = nullptr;
            r["aggregate"] = nullptr;
            r["support_size"] = nullptr;
            r["converged"] = false;
            r["error"] = e.error;
        }
        results.push_back(std::move(r));
    }
    j["results"] = std::move(results);

    json superior = json::array();
    for (const auto& s : superior_set(sweep, meta.eta)) superior.push_back({{"index", s.index}, {"score", s.score}});
    j["superior_set"] = std::move(superior);
    json hist = json::object();
    for (const auto& [size, freq] : support_histogram(sweep)) hist[std::to_string(size)] = freq;
    j["support_histogram"] = std::move(hist);
    json violations = json::array();
    for (const auto& d : non_domination_check(sweep)) violations.push_back({d.dominated, d.dominating});
    j["non_domination_violations"] = std::move(violations);
    return j;
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep, double eta) {
    std::vector<bool> superior(sweep.entries.size(), false);
    if (sweep.scaled)
        for (const auto& s : superior_set(sweep, eta)) superior[s.index] = true;
    os << "lambda1,lambda2,lambda3,lambda4,f1,f2,f3,f4,scaled_f1,scaled_f2,scaled_f3,scaled_f4,aggregate,"
          "support_size,region_label,converged,superior\n";
    for (std::size_t i = 0; i < sweep.entries.size(); ++i) {
        const auto& e = sweep.entries[i];
        os << csv_lambda(e.lambda);
        if (e.ok()) {
            for (int k = 0; k < 4; ++k) os << ',' << format_double(e.result->objectives[k]);
            for (double v : e.scaled) os << ',' << format_double(v);
            os << ',' << format_double(e.aggregate) << ',' << e.result->support.size();
        } else {
            os << ",,,,,,,,,,";
        }
        os << ',' << to_string(e.region) << ',' << (e.converged() ? 1 : 0) << ',' << (superior[i] ? 1 : 0) << '\n';
    }
}

void write_trade_off_table(std::ostream& os, const SweepResult& sweep, const std::vector<std::size_t>& indices) {
    os << kTradeOffHeader << '\n';
    for (std::size_t i : indices) {
        if (i >= sweep.entries.size()) throw DomainError("table index out of range");
        const auto& e = sweep.entries[i];
        if (!e.ok()) continue;
        os << csv_lambda(e.lambda);
        for (double v : e.scaled) os << ',' << format_double(v);
        os << ',' << e.result->support.size() << '\n';
    }
}

void write_returns_csv(std::ostream& os, const ReturnsMatrix& returns) {
    for (std::size_t i = 0; i < returns.asset_labels.size(); ++i) os << (i ? "," : "") << returns.asset_labels[i];
    os << '\n';
    for (Eigen::Index i = 0; i < returns.values.rows(); ++i) {
        for (Eigen::Index p = 0; p < returns.values.cols(); ++p) os << (p ? "," : "") << format_double(returns.values(i, p));
        os << '\n';
    }
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace mvsk

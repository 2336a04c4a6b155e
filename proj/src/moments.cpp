#include "mvsk/moments.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mvsk/errors.hpp"

namespace mvsk {
namespace {

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_cell(std::string_view cell, std::size_t line_no, std::size_t column) {
    double value = 0.0;
    // from_chars rejects a leading '+', accept it anyway
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw ParseError(line_no, "column " + std::to_string(column + 1) + ": non-numeric cell '" +
                                      std::string(cell) + "'");
    }
    return value;
}

} // namespace

ReturnsMatrix load_returns(std::istream& source, bool prices) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> labels;
    bool have_header = false;
    std::vector<std::vector<double>> rows;
    std::size_t width = 0;

    while (std::getline(source, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty()) continue;
        auto fields = split_fields(body);
        if (!have_header) {
            // strip a UTF-8 byte order mark
            if (fields[0].size() >= 3 && fields[0].substr(0, 3) == "\xEF\xBB\xBF") fields[0].remove_prefix(3);
            for (auto f : fields) labels.emplace_back(f);
            have_header = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) row.push_back(parse_cell(fields[c], line_no, c));
        if (rows.empty()) {
            width = row.size();
        } else if (row.size() != width) {
            throw ParseError(line_no, "ragged row: expected " + std::to_string(width) + " values, found " +
                                          std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError(line_no, "missing header row of asset labels");
    if (rows.empty()) throw ParseError(line_no, "no data rows");
    if (labels.size() != rows.size()) {
        throw ParseError(1, "header names " + std::to_string(labels.size()) + " assets but " +
                                std::to_string(rows.size()) + " data rows follow");
    }

    ReturnsMatrix out;
    out.asset_labels = std::move(labels);
    out.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t p = 0; p < width; ++p) out.values(i, p) = rows[i][p];

    if (prices) out = prices_to_returns(out);
    if (out.samples() < 2) {
        throw InsufficientSamples("need at least 2 samples per asset, found " + std::to_string(out.samples()));
    }
    return out;
}

ReturnsMatrix load_returns_file(const std::string& path, bool prices) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open returns file '" + path + "'");
    try {
        return load_returns(in, prices);
    } catch (const ParseError& e) {
        throw ParseError(e.row(), e.detail(), path);
    }
}

ReturnsMatrix prices_to_returns(const ReturnsMatrix& prices) {
    const auto n = prices.values.rows();
    const auto cols = prices.values.cols();
    ReturnsMatrix out;
    out.asset_labels = prices.asset_labels;
    out.values.resize(n, std::max<Eigen::Index>(cols - 1, 0));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index t = 0; t + 1 < cols; ++t) {
            const double p0 = prices.values(i, t);
            if (p0 == 0.0) {
                throw ParseError(static_cast<std::size_t>(i) + 2,
                                 "zero price at column " + std::to_string(t + 1));
            }
            out.values(i, t) = (prices.values(i, t + 1) - p0) / p0;
        }
    }
    return out;
}

ReturnsMatrix centralize(const ReturnsMatrix& raw) {
    ReturnsMatrix out = raw;
    if (raw.centralized) return out;
    const Eigen::VectorXd mu = raw.values.rowwise().mean();
    out.values.colwise() -= mu;
    out.centralized = true;
    return out;
}

MomentModel build_moment_model(const ReturnsMatrix& raw) {
    if (raw.centralized) throw DomainError("build_moment_model expects raw (non-centralized) returns");
    const int n = raw.assets();
    const int m = raw.samples();
    if (m < 2) throw InsufficientSamples("need at least 2 samples per asset, found " + std::to_string(m));
    if (n < 1) throw DimensionError("return matrix has no assets");
    if (n > kMaxAssets) {
        throw DimensionError("at most " + std::to_string(kMaxAssets) + " assets supported, got " +
                             std::to_string(n));
    }

    MomentModel model;
    model.n = n;
    model.m = m;
    model.mean = raw.values.rowwise().mean();
    const Eigen::MatrixXd t = raw.values.colwise() - model.mean;

    model.covariance = (t * t.transpose()) / static_cast<double>(m - 1);
    model.covariance = 0.5 * (model.covariance + model.covariance.transpose()).eval();

    // Column p of `pairs` is T_p (x) T_p, entry i*n+j.
    Eigen::MatrixXd pairs(static_cast<Eigen::Index>(n) * n, m);
    for (int p = 0; p < m; ++p)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) pairs(i * n + j, p) = t(i, p) * t(j, p);

    model.coskewness = (pairs * t.transpose()) / static_cast<double>(m);
    model.cokurtosis = (pairs * pairs.transpose()) / static_cast<double>(m);
    return model;
}

Bounds domain_bounds(const ReturnsMatrix& centralized, DomainKind kind, double cube_bound) {
    if (!centralized.centralized) throw DomainError("domain_bounds expects centralized returns");
    const auto& t = centralized.values;
    if (t.size() == 0) return {};
    if (kind == DomainKind::Simplex) return {t.minCoeff(), t.maxCoeff()};
    if (!(cube_bound > 0.0)) throw DomainError("cube bound must be positive");
    const double upper = cube_bound * t.cwiseAbs().colwise().sum().maxCoeff();
    return {-upper, upper};
}

} // namespace mvsk

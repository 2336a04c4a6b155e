#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "mvsk/moments.hpp"
#include "mvsk/solver.hpp"
#include "mvsk/sweep.hpp"

namespace mvsk {

/// Bounds derived from the centralized data, stored next to the model so
/// that convexity labels can be computed without the raw returns.
struct DataBounds {
    Bounds simplex;
    double cube_unit_upper = 0.0; ///< cube bound for B = 1; scales linearly in B

    Bounds for_domain(const Domain& domain) const;
};

DataBounds compute_data_bounds(const ReturnsMatrix& raw);

struct ModelFile {
    MomentModel model;
    std::vector<std::string> asset_labels;
    std::optional<DataBounds> bounds;
};

inline constexpr const char* kModelLayout =
    "row-major; covariance[i][j]; coskewness_flat[(i*n+j)*n+k] = S(i,j;k); "
    "cokurtosis_flat[(i*n+j)*n*n+k*n+l] = K(i,j;k,l); indices 0-based";

nlohmann::json model_to_json(const ModelFile& file);
ModelFile model_from_json(const nlohmann::json& j);
void write_model(const std::string& path, const ModelFile& file);
ModelFile read_model(const std::string& path);

/// FNV-1a over n, m and the tensor entries.
std::uint64_t fingerprint(const MomentModel& model);
std::string fingerprint_hex(const MomentModel& model);

nlohmann::json solve_result_to_json(const SolveResult& r, const LambdaPoint& lambda, const Domain& domain);

struct SweepMeta {
    double eta = 0.01;
    std::string data_fingerprint;
    bool lambda1_filter = true;
    int max_iterations = 0;
    std::uint64_t seed = 0;
};

/// Full sweep document: meta, grid, per-lambda results, superior set,
/// support histogram and dominance violations. Requires scaled values.
nlohmann::json sweep_to_json(const SweepResult& sweep, const SweepMeta& meta);

/// Long-format CSV, one row per lambda, keyed by (l2, l3, l4).
void write_sweep_csv(std::ostream& os, const SweepResult& sweep, double eta);

inline constexpr const char* kTradeOffHeader =
    "lambda1,lambda2,lambda3,lambda4,scaled_f1,scaled_f2,scaled_f3,scaled_f4,support_size";

/// lambda, scaled f1..f4, |supp| for the selected entries.
void write_trade_off_table(std::ostream& os, const SweepResult& sweep, const std::vector<std::size_t>& indices);

void write_returns_csv(std::ostream& os, const ReturnsMatrix& returns);

/// Shortest round-trip decimal text.
std::string format_double(double v);

} // namespace mvsk

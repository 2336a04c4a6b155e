#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mvsk/convexity.hpp"
#include "mvsk/objective.hpp"
#include "mvsk/projection.hpp"
#include "mvsk/solver.hpp"
#include "mvsk/sparse.hpp"

namespace mvsk {

/// Uniform grid {0, 1/s, ..., 1}^4 intersected with the 4-simplex, ordered
/// lexicographically by (l2, l3, l4).
struct LambdaGrid {
    int s = 0;
    std::vector<LambdaPoint> points;
    /// Integer numerators of each point (lambda = ticks / s).
    std::vector<std::array<int, 4>> ticks;

    std::size_t size() const { return points.size(); }
};

/// With `require_positive_mean_weight`, only points with l1 >= 1/s are kept.
LambdaGrid build_grid(int s, bool require_positive_mean_weight);

/// Gradient mapping norm under which a sweep entry is reported as converged.
inline constexpr double kConvergedTolerance = 1e-6;

struct SweepEntry {
    LambdaPoint lambda{1.0, 0.0, 0.0, 0.0};
    std::optional<SolveResult> result;
    std::string error;
    RegionLabel region = RegionLabel::Unknown;
    std::array<double, 4> scaled{};
    double aggregate = 0.0;

    bool ok() const { return result.has_value(); }
    bool converged() const { return result && result->projected_gradient_norm <= kConvergedTolerance; }
};

struct SweepOptions {
    int jobs = 1;
    bool warm_start = true;
    std::optional<SparseOptions> sparse;
    /// Domain bounds used to label each lambda; without them only the
    /// global certificate is reported.
    std::optional<Bounds> bounds;
};

struct SweepResult {
    LambdaGrid grid;
    Domain domain;
    std::optional<int> sparse_k;
    std::vector<SweepEntry> entries;
    bool scaled = false;

    std::size_t failures() const;
};

/// Solves every grid point.
///
/// Points sharing l4 form a slice. Slices are independent work units; within
/// a slice, points are solved in grid order and each warm-starts from the
/// nearest (L1 in lambda) already solved point of the slice. The output is
/// independent of `jobs`. A failing solve is recorded on its entry and does
/// not stop the sweep.
SweepResult run_sweep(const MomentEvaluator& evaluator, const Domain& domain, const LambdaGrid& grid,
                      const SolverOptions& opts, const SweepOptions& sweep_opts = {});

/// Min-max scaling per objective over the successful entries; f1 and f3 map
/// best-to-1 directly, f2 and f4 are flipped. A constant objective scales to 1.
SweepResult scale_values(SweepResult sweep);

struct ScoredIndex {
    std::size_t index;
    double score;
};

/// Entries whose aggregate is at least (1 - eta) times the sweep maximum.
std::vector<ScoredIndex> superior_set(const SweepResult& sweep, double eta);

/// Normalized frequency of each support size among successful entries.
std::map<int, double> support_histogram(const SweepResult& sweep);

struct Dominance {
    std::size_t dominated;
    std::size_t dominating;
};

/// Pairs (a, b) where b is at least as good as a in every objective and
/// better by more than `margin` in one. Mean and skewness are maximized,
/// variance and kurtosis minimized.
///
/// The weak comparison is exact on purpose: a tolerance there would flag
/// neighbouring Pareto points that trade a sub-margin loss in one objective
/// for a gain just above the margin in another.
std::vector<Dominance> dominated_pairs(std::span<const ObjectiveValues> values, double margin = 1e-9);

using EntryFilter = std::function<bool(const SweepEntry&)>;

/// Default selection: strictly positive lambda with a convexity certificate.
bool certified_positive(const SweepEntry& entry);

/// Dominance violations among the selected successful entries, reported as
/// sweep entry indices.
std::vector<Dominance> non_domination_check(const SweepResult& sweep, const EntryFilter& restrict_to = certified_positive,
                                            double margin = 1e-9);

} // namespace mvsk

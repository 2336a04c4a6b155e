#include "mvsk/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "mvsk/errors.hpp"

namespace mvsk {
namespace {

RegionLabel label_for(const LambdaPoint& lambda, const std::optional<Bounds>& bounds) {
    if (bounds) return classify_lambda(lambda, *bounds);
    return evaluate_conditions(lambda, Bounds{}).global ? RegionLabel::GlobalConvex : RegionLabel::Unknown;
}

int tick_distance(const std::array<int, 4>& a, const std::array<int, 4>& b) {
    int d = 0;
    for (std::size_t i = 0; i < 4; ++i) d += std::abs(a[i] - b[i]);
    return d;
}

void solve_slice(const MomentEvaluator& evaluator, const Domain& domain, const LambdaGrid& grid,
                 const SolverOptions& opts, const SweepOptions& sweep_opts, const std::vector<std::size_t>& slice,
                 std::vector<SweepEntry>& entries) {
    std::vector<std::size_t> solved;
    std::vector<Eigen::VectorXd> dense_solutions(slice.size());
    for (std::size_t pos = 0; pos < slice.size(); ++pos) {
        const std::size_t idx = slice[pos];
        auto& entry = entries[idx];

        std::optional<Eigen::VectorXd> warm;
        if (sweep_opts.warm_start && !solved.empty()) {
            std::size_t nearest = solved.front();
            int best = std::numeric_limits<int>::max();
            for (std::size_t s : solved) {
                const int d = tick_distance(grid.ticks[slice[s]], grid.ticks[idx]);
                if (d <= best) {
                    best = d;
                    nearest = s;
                }
            }
            warm = dense_solutions[nearest];
        }
        try {
            SolveResult dense = solve(evaluator, entry.lambda, domain, opts, warm);
            dense_solutions[pos] = dense.w;
            solved.push_back(pos);
            if (sweep_opts.sparse) {
                entry.result = solve_sparse(evaluator, entry.lambda, domain, *sweep_opts.sparse, dense, opts);
            } else {
                entry.result = std::move(dense);
            }
        } catch (const Error& e) {
            entry.result.reset();
            entry.error = e.what();
        }
    }
}

} // namespace

LambdaGrid build_grid(int s, bool require_positive_mean_weight) {
    if (s < 1) throw DomainError("grid subdivision s must be >= 1");
    LambdaGrid grid;
    grid.s = s;
    const double ds = s;
    const int min_l1 = require_positive_mean_weight ? 1 : 0;
    for (int a = 0; a <= s; ++a) {
        for (int b = 0; a + b <= s; ++b) {
            for (int c = 0; a + b + c <= s; ++c) {
                const int l1 = s - a - b - c;
                if (l1 < min_l1) continue;
                grid.ticks.push_back({l1, a, b, c});
                // l1 is taken as the complement so the entries sum to 1 exactly as doubles
                const double l2 = a / ds;
                const double l3 = b / ds;
                const double l4 = c / ds;
                grid.points.emplace_back(std::max(0.0, 1.0 - l2 - l3 - l4), l2, l3, l4);
            }
        }
    }
    return grid;
}

std::size_t SweepResult::failures() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const SweepEntry& e) { return !e.ok(); }));
}

SweepResult run_sweep(const MomentEvaluator& evaluator, const Domain& domain, const LambdaGrid& grid,
                      const SolverOptions& opts, const SweepOptions& sweep_opts) {
    opts.validate();
    domain.validate(evaluator.n());
    if (sweep_opts.sparse) sweep_opts.sparse->validate(evaluator.n());
    if (grid.ticks.size() != grid.points.size()) throw DimensionError("grid ticks and points disagree");

    SweepResult out;
    out.grid = grid;
    out.domain = domain;
    if (sweep_opts.sparse) out.sparse_k = sweep_opts.sparse->k;
    out.entries.reserve(grid.size());
    for (const auto& lambda : grid.points) {
        SweepEntry e;
        e.lambda = lambda;
        e.region = label_for(lambda, sweep_opts.bounds);
        out.entries.push_back(std::move(e));
    }

    std::vector<std::vector<std::size_t>> slices(static_cast<std::size_t>(grid.s) + 1);
    for (std::size_t i = 0; i < grid.size(); ++i) slices[static_cast<std::size_t>(grid.ticks[i][3])].push_back(i);
    std::erase_if(slices, [](const auto& s) { return s.empty(); });

    // Largest slices first keeps the tail short when jobs > 1.
    std::vector<std::size_t> order(slices.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return slices[a].size() > slices[b].size(); });

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < order.size(); k = next++) {
            solve_slice(evaluator, domain, grid, opts, sweep_opts, slices[order[k]], out.entries);
        }
    };
    const int jobs = std::max(1, std::min<int>(sweep_opts.jobs, static_cast<int>(slices.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

SweepResult scale_values(SweepResult sweep) {
    std::array<double, 4> lo;
    std::array<double, 4> hi;
    lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    for (const auto& e : sweep.entries) {
        if (!e.ok()) continue;
        for (int i = 0; i < 4; ++i) {
            lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], e.result->objectives[i]);
            hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], e.result->objectives[i]);
        }
    }
    for (auto& e : sweep.entries) {
        e.aggregate = 0.0;
        e.scaled.fill(0.0);
        if (!e.ok()) continue;
        for (std::size_t i = 0; i < 4; ++i) {
            const double range = hi[i] - lo[i];
            double v = 1.0;
            if (range > 0.0) {
                const double t = std::clamp((e.result->objectives[static_cast<int>(i)] - lo[i]) / range, 0.0, 1.0);
                v = (i == 0 || i == 2) ? t : 1.0 - t;
            }
            e.scaled[i] = v;
            e.aggregate += v;
        }
    }
    sweep.scaled = true;
    return sweep;
}

std::vector<ScoredIndex> superior_set(const SweepResult& sweep, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("eta must lie in (0, 1)");
    if (!sweep.scaled) throw DomainError("superior_set needs scaled values");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& e : sweep.entries)
        if (e.ok()) best = std::max(best, e.aggregate);
    std::vector<ScoredIndex> out;
    const double threshold = (1.0 - eta) * best;
    for (std::size_t i = 0; i < sweep.entries.size(); ++i) {
        const auto& e = sweep.entries[i];
        if (e.ok() && e.aggregate >= threshold) out.push_back({i, e.aggregate});
    }
    return out;
}

std::map<int, double> support_histogram(const SweepResult& sweep) {
    std::map<int, double> hist;
    std::size_t count = 0;
    for (const auto& e : sweep.entries) {
        if (!e.ok()) continue;
        hist[static_cast<int>(e.result->support.size())] += 1.0;
        ++count;
    }
    for (auto& [size, freq] : hist) freq /= static_cast<double>(count);
    return hist;
}

std::vector<Dominance> dominated_pairs(std::span<const ObjectiveValues> values, double margin) {
    auto oriented = [](const ObjectiveValues& f) { return std::array<double, 4>{f.f1, -f.f2, f.f3, -f.f4}; };
    std::vector<std::array<double, 4>> g;
    g.reserve(values.size());
    for (const auto& f : values) g.push_back(oriented(f));

    std::vector<Dominance> out;
    for (std::size_t a = 0; a < g.size(); ++a) {
        for (std::size_t b = 0; b < g.size(); ++b) {
            if (a == b) continue;
            bool no_worse = true;
            bool strictly_better = false;
            for (std::size_t i = 0; i < 4 && no_worse; ++i) {
                if (g[b][i] < g[a][i]) no_worse = false;
                if (g[b][i] > g[a][i] + margin) strictly_better = true;
            }
            if (no_worse && strictly_better) out.push_back({a, b});
        }
    }
    return out;
}

bool certified_positive(const SweepEntry& entry) {
    return entry.lambda.positive() && entry.region != RegionLabel::Unknown;
}

std::vector<Dominance> non_domination_check(const SweepResult& sweep, const EntryFilter& restrict_to, double margin) {
    std::vector<std::size_t> selected;
    std::vector<ObjectiveValues> values;
    for (std::size_t i = 0; i < sweep.entries.size(); ++i) {
        const auto& e = sweep.entries[i];
        if (!e.ok() || (restrict_to && !restrict_to(e))) continue;
        selected.push_back(i);
        values.push_back(e.result->objectives);
    }
    auto pairs = dominated_pairs(values, margin);
    for (auto& p : pairs) {
        p.dominated = selected[p.dominated];
        p.dominating = selected[p.dominating];
    }
    return pairs;
}

} // namespace mvsk

#include "mvsk/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mvsk/errors.hpp"

namespace mvsk {
namespace {

constexpr std::size_t kMaxCandidates = 2'000'000;
constexpr int kMaxPairGround = 20;

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

class SupportEnumerator {
public:
    SupportEnumerator(const std::vector<int>& ground, const SparseOptions& opts, int n)
        : ground_(ground), k_(opts.k), conflict_(static_cast<std::size_t>(n)) {
        for (const auto& [a, b] : opts.forbidden_pairs) {
            conflict_[static_cast<std::size_t>(a)].push_back(b);
            conflict_[static_cast<std::size_t>(b)].push_back(a);
        }
    }

    std::vector<std::vector<int>> run() {
        grow(0);
        return std::move(out_);
    }

private:
    bool compatible(int idx) const {
        for (int other : conflict_[static_cast<std::size_t>(idx)])
            if (std::find(current_.begin(), current_.end(), other) != current_.end()) return false;
        return true;
    }

    bool maximal() const {
        if (static_cast<int>(current_.size()) == k_) return true;
        for (int g : ground_)
            if (std::find(current_.begin(), current_.end(), g) == current_.end() && compatible(g)) return false;
        return true;
    }

    // Depth-first over independent sets in increasing index order.
    void grow(std::size_t from) {
        if (!current_.empty() && maximal()) {
            if (out_.size() >= kMaxCandidates) throw DomainError("too many candidate supports");
            out_.push_back(current_);
        }
        if (static_cast<int>(current_.size()) == k_) return;
        for (std::size_t i = from; i < ground_.size(); ++i) {
            if (!compatible(ground_[i])) continue;
            current_.push_back(ground_[i]);
            grow(i + 1);
            current_.pop_back();
        }
    }

    std::vector<int> ground_;
    int k_;
    std::vector<std::vector<int>> conflict_;
    std::vector<int> current_;
    std::vector<std::vector<int>> out_;
};

bool admissible(const std::vector<int>& support, const SparseOptions& opts) {
    if (static_cast<int>(support.size()) > opts.k) return false;
    for (const auto& [a, b] : opts.forbidden_pairs) {
        const bool has_a = std::binary_search(support.begin(), support.end(), a);
        const bool has_b = std::binary_search(support.begin(), support.end(), b);
        if (has_a && has_b) return false;
    }
    return true;
}

} // namespace

void SparseOptions::validate(int n) const {
    if (k < 1 || k > n) {
        throw DomainError("max support k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
    }
    if (proximity_count < 0) throw DomainError("proximity_count must be nonnegative");
    for (const auto& [a, b] : forbidden_pairs) {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw DomainError("invalid forbidden pair");
    }
}

SparseOptions SparseOptions::exhaustive(int k) {
    SparseOptions o;
    o.k = k;
    o.use_support_heuristic = false;
    o.use_proximity_heuristic = false;
    return o;
}

MomentModel restrict_model(const MomentModel& model, const std::vector<int>& support) {
    const int n = model.n;
    const int r = static_cast<int>(support.size());
    if (r == 0) throw DomainError("restrict_model needs a nonempty support");
    for (int i : support)
        if (i < 0 || i >= n) throw DomainError("support index out of range");

    MomentModel sub;
    sub.n = r;
    sub.m = model.m;
    sub.mean.resize(r);
    sub.covariance.resize(r, r);
    sub.coskewness.resize(r * r, r);
    sub.cokurtosis.resize(r * r, r * r);
    for (int a = 0; a < r; ++a) {
        const int i = support[static_cast<std::size_t>(a)];
        sub.mean(a) = model.mean(i);
        for (int b = 0; b < r; ++b) {
            const int j = support[static_cast<std::size_t>(b)];
            sub.covariance(a, b) = model.covariance(i, j);
            for (int c = 0; c < r; ++c) {
                const int k = support[static_cast<std::size_t>(c)];
                sub.coskewness(a * r + b, c) = model.coskewness(i * n + j, k);
                for (int d = 0; d < r; ++d) {
                    const int l = support[static_cast<std::size_t>(d)];
                    sub.cokurtosis(a * r + b, c * r + d) = model.cokurtosis(i * n + j, k * n + l);
                }
            }
        }
    }
    return sub;
}

std::vector<std::pair<int, int>> correlated_pairs(const MomentModel& model, double threshold) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < model.n; ++i) {
        for (int j = i + 1; j < model.n; ++j) {
            const double denom = std::sqrt(model.covariance(i, i) * model.covariance(j, j));
            if (denom > 0.0 && std::abs(model.covariance(i, j) / denom) >= threshold) pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

std::vector<std::vector<int>> admissible_supports(const std::vector<int>& ground, const SparseOptions& opts) {
    if (ground.empty()) return {};
    if (opts.forbidden_pairs.empty()) {
        const int g = static_cast<int>(ground.size());
        const int k = std::min(opts.k, g);
        if (binomial(g, k) > static_cast<double>(kMaxCandidates)) throw DomainError("too many candidate supports");
        std::vector<std::vector<int>> out;
        std::vector<int> pick(static_cast<std::size_t>(k));
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<int> s(pick.size());
            for (std::size_t i = 0; i < pick.size(); ++i) s[i] = ground[static_cast<std::size_t>(pick[i])];
            out.push_back(std::move(s));
            int i = k - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == g - k + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
        return out;
    }
    if (static_cast<int>(ground.size()) > kMaxPairGround) {
        throw DomainError("forbidden-pair supports are enumerated only for up to " + std::to_string(kMaxPairGround) +
                          " assets");
    }
    const int n = *std::max_element(ground.begin(), ground.end()) + 1;
    int max_index = n;
    for (const auto& [a, b] : opts.forbidden_pairs) max_index = std::max({max_index, a + 1, b + 1});
    auto out = SupportEnumerator(ground, opts, max_index).run();
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> enumerate_candidates(const Eigen::VectorXd& w_dense, const SparseOptions& opts,
                                                   const Domain& domain) {
    const int n = static_cast<int>(w_dense.size());
    opts.validate(n);
    const auto dense_support = support_of(w_dense);
    if (!dense_support.empty() && admissible(dense_support, opts)) return {dense_support};

    std::vector<int> ground;
    if (opts.use_support_heuristic) {
        ground = dense_support;
    } else {
        ground.resize(static_cast<std::size_t>(n));
        std::iota(ground.begin(), ground.end(), 0);
    }
    auto candidates = admissible_supports(ground, opts);
    if (!opts.use_proximity_heuristic) return candidates;

    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        Domain face = domain;
        face.support = candidates[c];
        ranked.emplace_back((project(w_dense, face) - w_dense).norm(), c);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t keep =
        std::min(ranked.size(), static_cast<std::size_t>(opts.proximity_count > 0 ? opts.proximity_count : n));
    std::vector<std::vector<int>> out;
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) out.push_back(std::move(candidates[ranked[i].second]));
    return out;
}

SolveResult solve_sparse(const MomentEvaluator& evaluator, const LambdaPoint& lambda, const Domain& domain,
                         const SparseOptions& opts, const SolveResult& dense, const SolverOptions& solver_opts) {
    const int n = evaluator.n();
    opts.validate(n);
    if (dense.w.size() != n) throw DimensionError("dense solution has wrong length");
    const auto candidates = enumerate_candidates(dense.w, opts, domain);
    const auto dense_support = support_of(dense.w);
    if (candidates.size() == 1 && candidates.front() == dense_support && admissible(dense_support, opts)) {
        return dense;
    }

    std::optional<SolveResult> best;
    std::vector<int> best_face;
    Domain sub_domain = domain;
    sub_domain.support.reset();
    for (const auto& face : candidates) {
        Domain lifted = domain;
        lifted.support = face;
        const Eigen::VectorXd start_full = project(dense.w, lifted);
        Eigen::VectorXd start(static_cast<Eigen::Index>(face.size()));
        for (std::size_t i = 0; i < face.size(); ++i) start(static_cast<Eigen::Index>(i)) = start_full(face[i]);

        const MomentEvaluator sub(restrict_model(evaluator.model(), face));
        const SolveResult local = solve(sub, lambda, sub_domain, solver_opts, start);

        SolveResult r;
        r.w = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i < face.size(); ++i) r.w(face[i]) = local.w(static_cast<Eigen::Index>(i));
        Eigen::VectorXd grad;
        r.scalarized_value = evaluator.value_and_gradient(lambda, r.w, grad);
        r.objectives = evaluator.objectives(r.w);
        r.iterations_used = local.iterations_used;
        r.projected_gradient_norm = local.projected_gradient_norm;
        r.final_step = local.final_step;
        r.trace = local.trace;
        r.best_trace = local.best_trace;
        r.max_iterate_infeasibility = local.max_iterate_infeasibility;
        r.support = support_of(r.w);

        if (!best || r.scalarized_value < best->scalarized_value ||
            (r.scalarized_value == best->scalarized_value && face < best_face)) {
            best = std::move(r);
            best_face = face;
        }
    }
    if (!best) throw DomainError("no admissible support for the sparse problem");
    return *best;
}

} // namespace mvsk

#include "mvsk/synth.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "mvsk/errors.hpp"

namespace mvsk {
namespace {

struct AssetParams {
    double drift;
    double beta;
    double idio_sd;
    double jump_prob;
    double jump_mean;
    double jump_sd;
};

std::pair<double, double> central_moment_pair(const ReturnsMatrix& r, int asset, int hi) {
    if (asset < 0 || asset >= r.assets()) throw DimensionError("asset index out of range");
    const Eigen::ArrayXd row = r.values.row(asset).transpose().array();
    const Eigen::ArrayXd t = row - row.mean();
    return {t.square().mean(), t.pow(hi).mean()};
}

} // namespace

ReturnsMatrix synthesize_returns(const SynthOptions& opts) {
    if (opts.n < 1 || opts.n > kMaxAssets) throw DimensionError("synthetic n must lie in [1, 64]");
    if (opts.m < 2) throw InsufficientSamples("synthetic m must be >= 2");

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    // Parameters are drawn first so that changing m keeps the asset mix.
    std::vector<AssetParams> params(static_cast<std::size_t>(opts.n));
    for (auto& p : params) {
        p.drift = 0.001 * unit(rng);
        p.beta = 0.5 + unit(rng);
        p.idio_sd = 0.008 + 0.012 * unit(rng);
        p.jump_prob = 0.02 + 0.06 * unit(rng);
        const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
        p.jump_mean = sign * (0.02 + 0.04 * unit(rng));
        p.jump_sd = 0.01 + 0.02 * unit(rng);
    }

    ReturnsMatrix out;
    out.values.resize(opts.n, opts.m);
    for (int t = 0; t < opts.m; ++t) {
        const double factor = 0.01 * normal(rng);
        for (int i = 0; i < opts.n; ++i) {
            const auto& p = params[static_cast<std::size_t>(i)];
            double r = p.drift + p.beta * factor + p.idio_sd * normal(rng);
            if (unit(rng) < p.jump_prob) r += p.jump_mean + p.jump_sd * normal(rng);
            out.values(i, t) = r;
        }
    }
    out.asset_labels.reserve(static_cast<std::size_t>(opts.n));
    for (int i = 0; i < opts.n; ++i) {
        char label[16];
        std::snprintf(label, sizeof label, "S%02d", i + 1);
        out.asset_labels.emplace_back(label);
    }
    return out;
}

double sample_skewness(const ReturnsMatrix& returns, int asset) {
    const auto [m2, m3] = central_moment_pair(returns, asset, 3);
    return m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
}

double sample_excess_kurtosis(const ReturnsMatrix& returns, int asset) {
    const auto [m2, m4] = central_moment_pair(returns, asset, 4);
    return m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
}

} // namespace mvsk

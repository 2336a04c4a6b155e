#pragma once

#include <cstdint>

#include "mvsk/moments.hpp"

namespace mvsk {

struct SynthOptions {
    int n = 20;
    int m = 500;
    std::uint64_t seed = 1;
};

/// Daily-scale returns from a one-factor model with per-asset jump
/// components. Jumps have a random sign per asset, so the sample shows
/// both skew and excess kurtosis. Same seed, same matrix.
ReturnsMatrix synthesize_returns(const SynthOptions& opts);

/// Sample skewness m3 / m2^{3/2} of one asset (population moments).
double sample_skewness(const ReturnsMatrix& returns, int asset);
/// Sample excess kurtosis m4 / m2^2 - 3.
double sample_excess_kurtosis(const ReturnsMatrix& returns, int asset);

} // namespace mvsk

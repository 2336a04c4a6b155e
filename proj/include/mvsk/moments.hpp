#pragma once

#include <istream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mvsk {

/// n x m table of relative returns; row i is the return series of asset i.
struct ReturnsMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> asset_labels;
    bool centralized = false;

    int assets() const { return static_cast<int>(values.rows()); }
    int samples() const { return static_cast<int>(values.cols()); }
};

/// Empirical moment tensors of a return sample.
///
/// Layout: `coskewness` is n^2 x n with row index i*n+j and column k,
/// `cokurtosis` is n^2 x n^2 with row index i*n+j and column k*n+l.
/// Both are fully symmetric in the underlying tensor indices.
struct MomentModel {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
    Eigen::MatrixXd coskewness;
    Eigen::MatrixXd cokurtosis;
    int n = 0;
    int m = 0;
};

/// Lower/upper bound on <R, w> over a feasible domain.
struct Bounds {
    double lower = 0.0;
    double upper = 0.0;
};

enum class DomainKind { Simplex, Cube };

inline constexpr int kMaxAssets = 64;

/// Reads the CSV format: first line holds the n asset labels, each following
/// line is one asset's return series. With `prices` set, each row is read as
/// a price series and converted to simple relative returns.
ReturnsMatrix load_returns(std::istream& source, bool prices = false);
ReturnsMatrix load_returns_file(const std::string& path, bool prices = false);

/// (P_{t+1} - P_t) / P_t along each row; drops one column.
ReturnsMatrix prices_to_returns(const ReturnsMatrix& prices);

/// Subtracts the row means.
ReturnsMatrix centralize(const ReturnsMatrix& raw);

/// Mean, unbiased covariance (divisor m-1) and the third/fourth central
/// co-moments (divisor m) of a raw return sample.
MomentModel build_moment_model(const ReturnsMatrix& raw);

/// Bounds on <T_p, w> for w in the simplex (entry extremes of T) or in the
/// cube [-B, B]^n (B times the largest absolute column sum).
Bounds domain_bounds(const ReturnsMatrix& centralized, DomainKind kind, double cube_bound = 1.0);

} // namespace mvsk

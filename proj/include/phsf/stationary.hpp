#pragma once

#include <Eigen/Core>

#include "phsf/parameters.hpp"

namespace phsf {

/// Closed-form covariance of the stationary Gaussian of the shifted process
/// (gamma > 0):
///
///   Sigma = [ V1  0  ]      V3 = circulant(v),
///           [ 0   V3 ],     V1 = alpha^-2 (V3 - sigma^2/(2 gamma N) * ones),
///
/// with mean (L/N * 1, 0).
struct StationaryCovariance {
    Eigen::VectorXd v;     // first column of V3
    Eigen::MatrixXd V3;    // velocity block, circulant symmetric
    Eigen::MatrixXd V1;    // distance block, V1 * 1 = 0
    Eigen::MatrixXd V2;    // cross block, identically zero
    Eigen::MatrixXd Sigma; // assembled 2N x 2N covariance
    Eigen::VectorXd mean;  // (L/N * 1, 0)
};

/// Geometric tail of the covariance lags as N -> infinity:
/// v_j -> sigma^2 a^j / (2 F).
struct LimitCovariance {
    double F = 0.0;      // sqrt(gamma^2 + 4 beta gamma)
    double a = 0.0;      // 1 + gamma/(2 beta) - F/(2 beta), in (0, 1)
    double sigma2 = 0.0; // noise variance sigma^2

    double value(int j) const; // sigma^2 a^j / (2 F)
};

/// Stationary velocity covariance lags
///   v_j = sigma^2/(2N) sum_k cos(2 pi j k / N) / (gamma + 4 beta sin^2(pi k / N)),
/// computed by the real cosine sum with exact j <-> N-j symmetry. O(N^2).
/// Throws std::invalid_argument when gamma = 0 (no stationary distribution).
Eigen::VectorXd stationary_v(const Parameters& params);

/// Full closed-form stationary covariance. Requires gamma > 0 and
/// N <= kDenseMatrixLimit for the dense blocks.
StationaryCovariance stationary_covariance(const Parameters& params);

/// max-abs entry of B Sigma + Sigma B^T + G G^T; zero iff Sigma solves the
/// stationary Lyapunov equation of the shifted process.
double lyapunov_residual(const Eigen::MatrixXd& Sigma, const Parameters& params);

/// Limit constants F and a; requires beta > 0 and gamma > 0.
LimitCovariance limit_covariance_constants(const Parameters& params);

/// sigma^2 a^j / (2 F); requires beta > 0, gamma > 0, j >= 0.
double limit_covariance(const Parameters& params, int j);

} // namespace phsf

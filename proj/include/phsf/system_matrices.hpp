#pragma once

#include <Eigen/Core>

#include "phsf/parameters.hpp"

namespace phsf {

/// Largest N for which the 2N x 2N system matrices are materialized densely.
/// Beyond that only the matrix-free operators below are available.
inline constexpr int kDenseMatrixLimit = 512;

/// Dense matrices of the matrix form of the dynamics,
///
///   dZ = (J - R) grad H(Z) dt + S u dt + G dW,   Z = (Q, p),
///
/// and the drift matrix B of the shifted process (Q, p - u).
struct SystemMatrices {
    Eigen::MatrixXd A;   // N x N circulant difference, rows (-1, 1)
    Eigen::MatrixXd AtA; // A^T A, circulant (2, -1, ..., -1)
    Eigen::MatrixXd J;   // 2N x 2N skew-symmetric structure matrix
    Eigen::MatrixXd R;   // 2N x 2N symmetric PSD dissipation matrix
    Eigen::MatrixXd B;   // 2N x 2N shifted-process drift matrix
    Eigen::VectorXd S;   // 2N input vector (0, gamma 1)
    Eigen::MatrixXd G;   // 2N x N noise matrix (0, sigma I)
};

/// Materializes all system matrices. Requires N <= kDenseMatrixLimit.
SystemMatrices build_matrices(const Parameters& params);

/// Matrix-free y = A x, i.e. y_n = x_{n+1} - x_n with periodic wrap. O(N).
void apply_A(const Eigen::VectorXd& x, Eigen::VectorXd& y);

/// Matrix-free y = A^T x, i.e. y_n = x_{n-1} - x_n with periodic wrap. O(N).
void apply_At(const Eigen::VectorXd& x, Eigen::VectorXd& y);

/// Matrix-free y = A^T A x, the negated periodic second difference
/// y_n = 2 x_n - x_{n+1} - x_{n-1}. O(N).
void apply_AtA(const Eigen::VectorXd& x, Eigen::VectorXd& y);

/// ||A x||^2 without materializing A. O(N).
double squared_norm_A(const Eigen::VectorXd& x);

} // namespace phsf

#include "phsf/system_matrices.hpp"

#include <stdexcept>
#include <string>

namespace phsf {

SystemMatrices build_matrices(const Parameters& params) {
    const int n = params.n_agents;
    if (n > kDenseMatrixLimit)
        throw std::invalid_argument("dense system matrices are limited to N <= " +
                                    std::to_string(kDenseMatrixLimit));

    SystemMatrices m;
    m.A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m.A(i, i) = -1.0;
        m.A(i, (i + 1) % n) = 1.0;
    }
    m.AtA = m.A.transpose() * m.A;

    m.J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m.J.topRightCorner(n, n) = m.A;
    m.J.bottomLeftCorner(n, n) = -m.A.transpose();

    m.R = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m.R.bottomRightCorner(n, n) = params.beta * m.AtA +
                                  params.gamma * Eigen::MatrixXd::Identity(n, n);

    m.B = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m.B.topRightCorner(n, n) = m.A;
    m.B.bottomLeftCorner(n, n) = -(params.alpha * params.alpha) * m.A.transpose();
    m.B.bottomRightCorner(n, n) = -m.R.bottomRightCorner(n, n);

    m.S = Eigen::VectorXd::Zero(2 * n);
    m.S.tail(n).setConstant(params.gamma);

    m.G = Eigen::MatrixXd::Zero(2 * n, n);
    m.G.bottomRows(n) = params.sigma * Eigen::MatrixXd::Identity(n, n);
    return m;
}

void apply_A(const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    const long n = x.size();
    y.resize(n);
    for (long i = 0; i + 1 < n; ++i) y[i] = x[i + 1] - x[i];
    y[n - 1] = x[0] - x[n - 1];
}

void apply_At(const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    const long n = x.size();
    y.resize(n);
    y[0] = x[n - 1] - x[0];
    for (long i = 1; i < n; ++i) y[i] = x[i - 1] - x[i];
}

void apply_AtA(const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    const long n = x.size();
    y.resize(n);
    for (long i = 0; i < n; ++i) {
        const double left = x[(i + n - 1) % n];
        const double right = x[(i + 1) % n];
        y[i] = 2.0 * x[i] - left - right;
    }
}

double squared_norm_A(const Eigen::VectorXd& x) {
    const long n = x.size();
    double sum = 0.0;
    for (long i = 0; i + 1 < n; ++i) {
        const double d = x[i + 1] - x[i];
        sum += d * d;
    }
    const double d = x[0] - x[n - 1];
    return sum + d * d;
}

} // namespace phsf

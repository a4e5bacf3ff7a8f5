#include "phsf/stationary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "phsf/system_matrices.hpp"

namespace phsf {

namespace {

void require_stationary(const Parameters& params) {
    if (!(params.gamma > 0.0))
        throw std::invalid_argument(
            "no stationary distribution exists: the relaxation rate gamma must be positive");
}

} // namespace

double LimitCovariance::value(int j) const {
    return sigma2 * std::pow(a, j) / (2.0 * F);
}

Eigen::VectorXd stationary_v(const Parameters& params) {
    require_stationary(params);
    const int n = params.n_agents;
    const double pi = std::numbers::pi;

    // Denominators gamma + 4 beta sin^2(pi k / N), shared by every lag.
    Eigen::VectorXd denom(n);
    for (int k = 0; k < n; ++k) {
        const double s = std::sin(pi * k / n);
        denom[k] = params.gamma + 4.0 * params.beta * s * s;
    }

    const double prefactor = params.sigma * params.sigma / (2.0 * n);
    Eigen::VectorXd v(n);
    // Evaluate only j <= N/2 and mirror, so v_j == v_{N-j} holds exactly.
    for (int j = 0; j <= n / 2; ++j) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k)
            sum += std::cos(2.0 * pi * static_cast<double>(j) * k / n) / denom[k];
        const double value = prefactor * sum;
        v[j] = value;
        if (j > 0) v[n - j] = value;
    }
    return v;
}

StationaryCovariance stationary_covariance(const Parameters& params) {
    require_stationary(params);
    const int n = params.n_agents;
    if (n > kDenseMatrixLimit)
        throw std::invalid_argument("dense stationary covariance is limited to N <= " +
                                    std::to_string(kDenseMatrixLimit));

    StationaryCovariance cov;
    cov.v = stationary_v(params);

    cov.V3.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cov.V3(i, j) = cov.v[(i - j + n) % n];

    const double offset = params.sigma * params.sigma / (2.0 * params.gamma * n);
    const double inv_a2 = 1.0 / (params.alpha * params.alpha);
    cov.V1 = inv_a2 * (cov.V3.array() - offset).matrix();
    cov.V2 = Eigen::MatrixXd::Zero(n, n);

    cov.Sigma = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    cov.Sigma.topLeftCorner(n, n) = cov.V1;
    cov.Sigma.bottomRightCorner(n, n) = cov.V3;

    cov.mean = Eigen::VectorXd::Zero(2 * n);
    cov.mean.head(n).setConstant(uniform_spacing(params));
    return cov;
}

double lyapunov_residual(const Eigen::MatrixXd& Sigma, const Parameters& params) {
    const int two_n = 2 * params.n_agents;
    if (Sigma.rows() != two_n || Sigma.cols() != two_n)
        throw std::invalid_argument("Sigma must be 2N x 2N for the given parameters");
    const SystemMatrices m = build_matrices(params);
    const Eigen::MatrixXd residual =
        m.B * Sigma + Sigma * m.B.transpose() + m.G * m.G.transpose();
    return residual.cwiseAbs().maxCoeff();
}

LimitCovariance limit_covariance_constants(const Parameters& params) {
    if (!(params.beta > 0.0))
        throw std::invalid_argument("covariance limit requires beta > 0");
    if (!(params.gamma > 0.0))
        throw std::invalid_argument("covariance limit requires gamma > 0");
    LimitCovariance limit;
    limit.F = std::sqrt(params.gamma * (params.gamma + 4.0 * params.beta));
    limit.a = 1.0 + params.gamma / (2.0 * params.beta) - limit.F / (2.0 * params.beta);
    limit.sigma2 = params.sigma * params.sigma;
    return limit;
}

double limit_covariance(const Parameters& params, int j) {
    if (j < 0) throw std::invalid_argument("lag j must be nonnegative");
    return limit_covariance_constants(params).value(j);
}

} // namespace phsf

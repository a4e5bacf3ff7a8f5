#include "phsf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "phsf/errors.hpp"
#include "phsf/system_matrices.hpp"

namespace phsf {

std::vector<double> mode_factors(int n_agents) {
    if (n_agents < 3) throw std::invalid_argument("mode factors require N >= 3");
    std::vector<double> mu(n_agents);
    // Evaluate only j <= N/2 and mirror, so mu_j == mu_{N-j} holds exactly.
    for (int j = 0; j <= n_agents / 2; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / n_agents;
        const double value = 2.0 - 2.0 * std::cos(angle);
        mu[j] = value;
        if (j > 0) mu[n_agents - j] = value;
    }
    mu[0] = 0.0;
    return mu;
}

SpectralDecomposition eigenvalues(const Parameters& params) {
    const int n = params.n_agents;
    SpectralDecomposition dec;
    dec.mode_factors = mode_factors(n);
    dec.eigenvalues.resize(2 * n);

    // Mode 0 is assigned directly: the zero mean-distance mode and the
    // relaxation mode of the mean velocity.
    dec.eigenvalues[0] = {0.0, 0.0};
    dec.eigenvalues[1] = {params.gamma > 0.0 ? -params.gamma : 0.0, 0.0};

    const double a2 = params.alpha * params.alpha;
    for (int j = 1; j < n; ++j) {
        const double mu = dec.mode_factors[j];
        const double damping = params.beta * mu + params.gamma;
        const double disc = damping * damping - 4.0 * a2 * mu;
        std::complex<double> root;
        if (disc >= 0.0)
            root = {std::sqrt(disc), 0.0};
        else
            root = {0.0, std::sqrt(-disc)};
        dec.eigenvalues[2 * j] = 0.5 * (std::complex<double>(-damping, 0.0) - root);
        dec.eigenvalues[2 * j + 1] = 0.5 * (std::complex<double>(-damping, 0.0) + root);
    }
    return dec;
}

StabilityVerdict is_asymptotically_stable(const Parameters& params) {
    const SpectralDecomposition dec = eigenvalues(params);
    StabilityVerdict verdict;
    verdict.max_real_part_nonzero_modes = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < dec.eigenvalues.size(); ++i) {
        verdict.max_real_part_nonzero_modes =
            std::max(verdict.max_real_part_nonzero_modes, dec.eigenvalues[i].real());
    }
    verdict.stable = verdict.max_real_part_nonzero_modes < 0.0;
    return verdict;
}

std::vector<std::complex<double>> dense_spectrum_oracle(const Parameters& params) {
    const SystemMatrices m = build_matrices(params);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m.B, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("dense eigensolver did not converge");
    const auto& values = solver.eigenvalues();
    return {values.data(), values.data() + values.size()};
}

double multiset_distance(std::vector<std::complex<double>> a,
                         std::vector<std::complex<double>> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("multiset_distance requires equal-size multisets");
    const std::size_t n = a.size();
    std::vector<bool> used_a(n, false), used_b(n, false);
    double worst = 0.0;
    for (std::size_t round = 0; round < n; ++round) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (used_a[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (used_b[j]) continue;
                const double d = std::abs(a[i] - b[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        used_a[bi] = true;
        used_b[bj] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace phsf

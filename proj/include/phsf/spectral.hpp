#pragma once

#include <complex>
#include <vector>

#include "phsf/parameters.hpp"

namespace phsf {

/// Closed-form eigenvalue decomposition of the shifted-system drift matrix B.
///
/// For each circulant mode factor mu_j = 2 - 2 cos(2 pi j / N) the two
/// eigenvalues solve lambda^2 + lambda (beta mu_j + gamma) + alpha^2 mu_j = 0.
/// Mode j = 0 carries lambda_{0,1} = 0 and lambda_{0,2} = -gamma.
struct SpectralDecomposition {
    std::vector<double> mode_factors;                        // mu_j, j = 0..N-1
    std::vector<std::complex<double>> eigenvalues;           // lambda_{j,k}, k-major: index 2*j + (k-1)

    std::complex<double> lambda(int j, int k) const { return eigenvalues[2 * j + (k - 1)]; }
};

/// mu_j = 2 - 2 cos(2 pi j / N) in [0, 4], computed with exact j <-> N-j
/// symmetry. Throws std::invalid_argument for N < 3.
std::vector<double> mode_factors(int n_agents);

/// All 2N closed-form eigenvalues of B. Negative discriminants produce
/// complex-conjugate pairs (guarded square root, never NaN).
SpectralDecomposition eigenvalues(const Parameters& params);

struct StabilityVerdict {
    bool stable = false;
    double max_real_part_nonzero_modes = 0.0; // witness: max Re over all modes but (0,1)
};

/// Asymptotic stability of the shifted process: true iff every eigenvalue
/// except lambda_{0,1} = 0 has strictly negative real part.
StabilityVerdict is_asymptotically_stable(const Parameters& params);

/// Numerical eigenvalues of the materialized B via a dense general
/// eigensolver. Independent cross-check of the closed form; requires
/// N <= kDenseMatrixLimit. Throws NumericalError if the solver fails.
std::vector<std::complex<double>> dense_spectrum_oracle(const Parameters& params);

/// Greedy nearest-pair multiset distance: repeatedly matches the globally
/// closest remaining pair and returns the largest matched distance. Sizes
/// must agree (throws std::invalid_argument).
double multiset_distance(std::vector<std::complex<double>> a,
                         std::vector<std::complex<double>> b);

} // namespace phsf

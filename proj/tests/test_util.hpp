#pragma once

#include <Eigen/Core>

#include "phsf/parameters.hpp"
#include "phsf/rng.hpp"
#include "phsf/state.hpp"

namespace phsf::test {

/// Uniform draw in [lo, hi).
inline double uniform_in(Xoshiro256pp& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.uniform();
}

/// Random admissible parameters covering the ranges the stationary and
/// spectral checks are specified over.
inline Parameters random_parameters(Xoshiro256pp& rng, int n_agents,
                                    double gamma_min = 0.01) {
    Parameters p;
    p.n_agents = n_agents;
    p.ring_length = uniform_in(rng, 1.0, 100.0);
    p.alpha = uniform_in(rng, 0.1, 5.0);
    p.beta = uniform_in(rng, 0.1, 5.0);
    p.gamma = uniform_in(rng, gamma_min, 5.0);
    p.sigma = uniform_in(rng, 0.1, 2.0);
    p.u = uniform_in(rng, -2.0, 2.0);
    return p;
}

/// Largest absolute entry difference; 0 means bit-identical matrices.
inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

/// Random state with O(1) coordinates; distances are recentered so they sum
/// to the ring length.
inline State random_state(Xoshiro256pp& rng, const Parameters& params, double scale = 1.0) {
    const int n = params.n_agents;
    State s;
    s.Q.resize(n);
    s.p.resize(n);
    for (int i = 0; i < n; ++i) {
        s.Q[i] = scale * (2.0 * rng.uniform() - 1.0);
        s.p[i] = scale * (2.0 * rng.uniform() - 1.0);
    }
    s.Q.array() += (params.ring_length - s.Q.sum()) / n;
    return s;
}

} // namespace phsf::test

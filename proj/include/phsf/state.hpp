#pragma once

#include <Eigen/Core>

#include "phsf/parameters.hpp"

namespace phsf {

/// Instantaneous system state: distances to the right neighbour and
/// velocities of all N agents. The dynamics are closed in (Q, p); absolute
/// positions are reconstructed from a tracked q_1 only when needed for
/// output.
struct State {
    Eigen::VectorXd Q; // distances Q_n = q_{n+1} - q_n (ring-wrapped), sum(Q) = L
    Eigen::VectorXd p; // velocities

    int size() const { return static_cast<int>(Q.size()); }
};

/// Uniform state Q_n = L/N, p_n = velocity.
State make_uniform_state(const Parameters& params, double velocity);

/// Distances from ordered absolute positions: Q_n = q_{n+1} - q_n for n < N
/// and Q_N = L + q_1 - q_N, so that sum(Q) = L. Throws std::invalid_argument
/// if any produced distance is negative (unordered input).
Eigen::VectorXd distances_from_positions(const Eigen::VectorXd& q, double ring_length);

} // namespace phsf

#pragma once

#include <Eigen/Core>

#include "phsf/parameters.hpp"
#include "phsf/state.hpp"

namespace phsf {

/// Time derivative of a state under the deterministic part of the dynamics.
struct Derivative {
    Eigen::VectorXd dQ;
    Eigen::VectorXd dp;
};

/// Componentwise drift of the extended model,
///   dQ_n = p_{n+1} - p_n,
///   dp_n = U'(Q_n) - U'(Q_{n-1}) + beta (p_{n+1} - 2 p_n + p_{n-1}) + gamma (u - p_n),
/// with periodic index wrap. gamma = 0 recovers the uncontrolled model. O(N).
Derivative drift(const State& state, const Parameters& params);

/// In-place variant writing into a caller-owned Derivative (no allocation
/// when the buffers already have size N).
void drift_into(const State& state, const Parameters& params, Derivative& out);

/// H(Q, p) = 1/2 ||p||^2 + sum_n U(Q_n).
double hamiltonian(const State& state, const Parameters& params);

/// Deterministic dissipation rate dH/dt for sigma = 0:
///   -beta ||A (p - u 1)||^2 - gamma ||p - u 1||^2  <=  0.
double hamiltonian_dissipation_rate(const State& state, const Parameters& params);

/// dt-coefficient of dH under the Ito dynamics:
///   -beta ||A p||^2 + gamma <p, u 1 - p> + N sigma^2 / 2.
double hamiltonian_expected_drift(const State& state, const Parameters& params);

} // namespace phsf

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "phsf/parameters.hpp"
#include "phsf/state.hpp"

namespace phsf {

enum class InitialCondition {
    uniform_rest,  // Q = L/N, p = 0
    uniform_speed, // Q = L/N, p = u
    explicit_state // caller-provided State
};

struct SimConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    std::uint64_t seed = 0;
    long record_every = 1; // trajectory sampling stride, in steps
    InitialCondition initial_condition = InitialCondition::uniform_rest;
    State initial_state; // used only when initial_condition == explicit_state
};

/// Throws std::invalid_argument on dt <= 0, t_end < dt or record_every < 1,
/// and validates the explicit initial state (dimension, sum(Q) = L).
void validate_sim_config(const SimConfig& config, const Parameters& params);

/// Sampled trajectory of one realization. All tracks share the same length
/// and times are strictly increasing multiples of record_every * dt.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> q1_track;            // unwrapped absolute position of agent 1
    std::vector<double> hamiltonian_track;   // H at sample instants
    std::vector<double> mean_velocity_track; // pbar at sample instants
    long ordering_violations = 0;            // steps on which some Q_n < 0
    bool stability_warning = false;          // dt * (4 beta + gamma) > 1 at launch

    long samples() const { return static_cast<long>(times.size()); }
};

/// Explicit-Euler stiffness factor dt * (4 beta + gamma); the scheme is run
/// regardless, but values above 1 flag Trajectory::stability_warning.
double em_stability_factor(const Parameters& params, double dt);

/// One Euler-Maruyama step:
///   Q' = Q + dQ dt,   p' = p + dp dt + sigma sqrt(dt) * noise.
/// noise must hold exactly N independent standard normals.
State em_step(const State& state, const Parameters& params, double dt,
              const Eigen::VectorXd& noise);

/// Integrates the SDE from the configured initial condition and records every
/// record_every-th step (plus the initial state). Deterministic in
/// (params, config, seed); the N noise draws per step are consumed in agent
/// order. Sample count is floor(t_end/dt/record_every) + 1.
Trajectory simulate(const Parameters& params, const SimConfig& config);

/// Cross-replica variance of the mean velocity at each sample instant.
struct MeanVelocityStatistics {
    std::vector<double> times;
    std::vector<double> variance; // across replicas, at each time
};

/// Requires >= 2 trajectories on identical time grids (throws
/// std::invalid_argument otherwise).
MeanVelocityStatistics mean_velocity_statistics(const std::vector<Trajectory>& replicas);

} // namespace phsf

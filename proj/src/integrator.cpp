#include "phsf/integrator.hpp"

#include <cmath>
#include <stdexcept>

#include "phsf/dynamics.hpp"
#include "phsf/rng.hpp"

namespace phsf {

namespace {

long step_count(const SimConfig& config) {
    const double ratio = config.t_end / config.dt;
    // Guard against t_end/dt landing a rounding error below an integer.
    return static_cast<long>(std::floor(ratio * (1.0 + 1e-12) + 1e-9));
}

State initial_state(const Parameters& params, const SimConfig& config) {
    switch (config.initial_condition) {
        case InitialCondition::uniform_rest: return make_uniform_state(params, 0.0);
        case InitialCondition::uniform_speed: return make_uniform_state(params, params.u);
        case InitialCondition::explicit_state: return config.initial_state;
    }
    throw std::logic_error("unknown initial condition");
}

} // namespace

void validate_sim_config(const SimConfig& config, const Parameters& params) {
    if (!(config.dt > 0.0) || !std::isfinite(config.dt))
        throw std::invalid_argument("dt must be positive");
    if (!(config.t_end >= config.dt) || !std::isfinite(config.t_end))
        throw std::invalid_argument("t_end must be at least dt");
    if (config.record_every < 1)
        throw std::invalid_argument("record_every must be at least 1");
    if (config.initial_condition == InitialCondition::explicit_state) {
        const auto& s = config.initial_state;
        if (s.Q.size() != params.n_agents || s.p.size() != params.n_agents)
            throw std::invalid_argument("explicit initial state dimension does not match n_agents");
        const double total = s.Q.sum();
        if (std::abs(total - params.ring_length) > 1e-9 * params.ring_length)
            throw std::invalid_argument("explicit initial distances must sum to ring_length");
    }
}

double em_stability_factor(const Parameters& params, double dt) {
    // mu_max = 4 is the largest circulant mode factor of A^T A.
    return dt * (4.0 * params.beta + params.gamma);
}

State em_step(const State& state, const Parameters& params, double dt,
              const Eigen::VectorXd& noise) {
    if (noise.size() != params.n_agents)
        throw std::invalid_argument("noise vector must have one entry per agent");
    Derivative d = drift(state, params);
    State next;
    next.Q = state.Q + dt * d.dQ;
    next.p = state.p + dt * d.dp + (params.sigma * std::sqrt(dt)) * noise;
    return next;
}

Trajectory simulate(const Parameters& params, const SimConfig& config) {
    validate_sim_config(config, params);

    const long n = params.n_agents;
    const long n_steps = step_count(config);
    const long stride = config.record_every;
    const long n_samples = n_steps / stride + 1;

    State state = initial_state(params, config);
    double q1 = 0.0; // agent 1 starts at the origin; dq1 = p1 dt

    Trajectory traj;
    traj.stability_warning = em_stability_factor(params, config.dt) > 1.0;
    traj.times.reserve(n_samples);
    traj.states.reserve(n_samples);
    traj.q1_track.reserve(n_samples);
    traj.hamiltonian_track.reserve(n_samples);
    traj.mean_velocity_track.reserve(n_samples);

    const auto record = [&](long step) {
        traj.times.push_back(static_cast<double>(step) * config.dt);
        traj.states.push_back(state);
        traj.q1_track.push_back(q1);
        traj.hamiltonian_track.push_back(hamiltonian(state, params));
        traj.mean_velocity_track.push_back(state.p.mean());
    };
    record(0);

    NormalSampler normals(config.seed);
    const bool noisy = params.sigma > 0.0;
    const double noise_scale = params.sigma * std::sqrt(config.dt);
    Eigen::VectorXd noise = Eigen::VectorXd::Zero(n);
    Derivative d;
    d.dQ.resize(n);
    d.dp.resize(n);

    for (long step = 1; step <= n_steps; ++step) {
        drift_into(state, params, d);
        if (noisy) normals.fill(noise.data(), n);

        q1 += state.p[0] * config.dt;
        state.Q += config.dt * d.dQ;
        if (noisy)
            state.p += config.dt * d.dp + noise_scale * noise;
        else
            state.p += config.dt * d.dp;

        if (state.Q.minCoeff() < 0.0) ++traj.ordering_violations;
        if (step % stride == 0) record(step);
    }
    return traj;
}

MeanVelocityStatistics mean_velocity_statistics(const std::vector<Trajectory>& replicas) {
    if (replicas.size() < 2)
        throw std::invalid_argument("mean_velocity_statistics needs at least 2 replicas");
    const auto& times = replicas.front().times;
    for (const auto& r : replicas) {
        if (r.times != times)
            throw std::invalid_argument("replica trajectories are on different time grids");
    }

    const double n_replicas = static_cast<double>(replicas.size());
    MeanVelocityStatistics stats;
    stats.times = times;
    stats.variance.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        double mean = 0.0;
        for (const auto& r : replicas) mean += r.mean_velocity_track[k];
        mean /= n_replicas;
        double ss = 0.0;
        for (const auto& r : replicas) {
            const double dev = r.mean_velocity_track[k] - mean;
            ss += dev * dev;
        }
        stats.variance[k] = ss / (n_replicas - 1.0);
    }
    return stats;
}

} // namespace phsf

#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "phsf/integrator.hpp"
#include "phsf/parameters.hpp"

namespace phsf {

/// Shortest decimal representation that parses back to exactly the same
/// double (std::to_chars).
std::string format_double(double value);

/// 12-significant-digit representation; idempotent under reparse-reserialize.
std::string format_sig12(double value);

/// Strict double parse of a full token; throws std::invalid_argument.
double parse_double(const std::string& token);

/// Trajectory CSV with fixed schema `t,q1,...,qN,p1,...,pN,H,pbar`.
/// Positions are absolute, reduced modulo L, serialized to 12 significant
/// digits; all other columns use the shortest round-trip format_double.
/// Leading '#' comment lines carry the manifest reference.
std::string trajectory_to_csv(const Trajectory& trajectory, const Parameters& params,
                              const std::string& comment = {});

/// Parsed trajectory CSV: column-major doubles exactly as stored.
struct TrajectoryTable {
    int n_agents = 0;
    std::vector<double> t;
    Eigen::MatrixXd q; // samples x N, wrapped positions
    Eigen::MatrixXd p; // samples x N
    std::vector<double> hamiltonian;
    std::vector<double> mean_velocity;
};

TrajectoryTable trajectory_from_csv(const std::string& csv);

/// Headerless numeric matrix CSV (optional leading comment lines).
std::string matrix_to_csv(const Eigen::MatrixXd& m, const std::string& comment = {});

/// x wrapped into [0, L).
double wrap_position(double x, double ring_length);

/// Absolute wrapped positions of all agents at sample s of a trajectory,
/// reconstructed by cumulative summation from the tracked q1.
Eigen::VectorXd wrapped_positions(const Trajectory& trajectory, long sample,
                                  const Parameters& params);

} // namespace phsf

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "phsf/integrator.hpp"
#include "phsf/parameters.hpp"

namespace phsf {

struct EnsembleConfig {
    int replicas = 1;
    double burn_in = 0.0;   // time discarded before sampling
    long sample_stride = 1; // in recorded samples, after burn-in
    std::uint64_t base_seed = 0;
    int n_threads = 0;      // 0 = hardware concurrency
};

void validate_ensemble_config(const EnsembleConfig& ens, const SimConfig& sim);

/// Empirical moments pooled over agents, replicas and post-burn-in samples,
/// with replica-based standard errors (variance across per-replica means).
/// Second moments are centered at the known stationary targets (L/N for
/// distances, u for velocities), not at sample means.
struct MomentReport {
    int replicas = 0;
    long kept_samples_per_replica = 0;
    long ordering_violations = 0;

    Eigen::VectorXd mean_Q, mean_p;   // per-agent means
    Eigen::VectorXd var_Q, var_p;     // per-agent second moments about targets
    Eigen::VectorXd cov_lag;          // circulant-averaged velocity covariance, lag j

    Eigen::VectorXd se_mean_Q, se_mean_p, se_var_Q, se_var_p, se_cov_lag;

    // Filled only in stationary comparison mode (gamma > 0, replicas >= 2).
    bool has_comparison = false;
    Eigen::VectorXd target_mean_Q, target_mean_p, target_var_Q, target_var_p, target_cov_lag;
    Eigen::VectorXd z_mean_Q, z_mean_p, z_var_Q, z_var_p, z_cov_lag;

    /// Fraction of comparison entries with |z| <= 3; 1.0 when no comparison.
    double fraction_z_within_3() const;
};

/// Runs the replica ensemble (concurrently; reduction is in replica-index
/// order, so the report is bit-exact under any scheduling) and estimates the
/// empirical moments. In stationary mode (gamma > 0) the closed-form targets
/// and z-scores are attached.
MomentReport run_ensemble(const Parameters& params, const SimConfig& sim,
                          const EnsembleConfig& ens);

/// Least-squares growth law of the mean-velocity variance for gamma = 0.
struct DivergenceReport {
    double slope = 0.0;     // fitted d Var(pbar) / dt
    double intercept = 0.0;
    double expected_slope = 0.0; // sigma^2 / N
    std::vector<double> times;
    std::vector<double> variance;
};

/// Fits Var(pbar(t)) ~ intercept + slope * t across replicas. Requires
/// gamma = 0 (the controlled model has no divergence to probe) and
/// replicas >= 2.
DivergenceReport divergence_probe(const Parameters& params, const SimConfig& sim,
                                  const EnsembleConfig& ens);

/// Observed vs. predicted mean Hamiltonian drift per unit time.
struct DriftCheckReport {
    double observed = 0.0;  // mean finite-difference (H(t+D) - H(t)) / D
    double predicted = 0.0; // mean of the Ito drift formula over samples
    double difference = 0.0;
    double se_difference = 0.0; // across replicas; 0 for a single replica
};

DriftCheckReport hamiltonian_drift_check(const Parameters& params, const SimConfig& sim,
                                         const EnsembleConfig& ens);

} // namespace phsf

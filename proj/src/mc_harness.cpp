#include "phsf/mc_harness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "phsf/dynamics.hpp"
#include "phsf/rng.hpp"
#include "phsf/stationary.hpp"

namespace phsf {

namespace {

int resolve_threads(const EnsembleConfig& ens) {
    if (ens.n_threads > 0) return ens.n_threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(replica_index) for every replica on a striped thread pool.
/// Each replica's work is independent; callers reduce results afterwards in
/// replica-index order so the outcome is scheduling-independent. The first
/// replica exception (lowest index) is rethrown after all threads join.
template <typename Fn>
void for_each_replica(int replicas, int n_threads, Fn&& fn) {
    std::vector<std::exception_ptr> errors(replicas);
    const int threads = std::min(std::max(n_threads, 1), replicas);
    if (threads == 1) {
        for (int r = 0; r < replicas; ++r) fn(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (int r = t; r < replicas; r += threads) {
                try {
                    fn(r);
                } catch (...) {
                    errors[r] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
}

/// Indices of recorded samples at or past burn_in, thinned by sample_stride.
std::vector<long> kept_sample_indices(const Trajectory& traj, const EnsembleConfig& ens) {
    std::vector<long> kept;
    const double threshold = ens.burn_in * (1.0 - 1e-12);
    long since = -1;
    for (long i = 0; i < traj.samples(); ++i) {
        if (traj.times[i] < threshold) continue;
        ++since;
        if (since % ens.sample_stride == 0) kept.push_back(i);
    }
    return kept;
}

struct ReplicaMoments {
    Eigen::VectorXd mean_Q, mean_p, var_Q, var_p, cov_lag;
    long ordering_violations = 0;
    long kept = 0;
};

ReplicaMoments reduce_replica(const Trajectory& traj, const Parameters& params,
                              const EnsembleConfig& ens) {
    const std::vector<long> kept = kept_sample_indices(traj, ens);
    if (kept.empty())
        throw std::invalid_argument("no samples remain after burn-in");

    const int n = params.n_agents;
    const double spacing = uniform_spacing(params);
    ReplicaMoments m;
    m.mean_Q = Eigen::VectorXd::Zero(n);
    m.mean_p = Eigen::VectorXd::Zero(n);
    m.var_Q = Eigen::VectorXd::Zero(n);
    m.var_p = Eigen::VectorXd::Zero(n);
    m.cov_lag = Eigen::VectorXd::Zero(n);
    m.ordering_violations = traj.ordering_violations;
    m.kept = static_cast<long>(kept.size());

    Eigen::VectorXd centered(n);
    for (long idx : kept) {
        const State& s = traj.states[idx];
        m.mean_Q += s.Q;
        m.mean_p += s.p;
        centered = s.p.array() - params.u;
        for (int i = 0; i < n; ++i) {
            const double dq = s.Q[i] - spacing;
            m.var_Q[i] += dq * dq;
            m.var_p[i] += centered[i] * centered[i];
        }
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += centered[i] * centered[(i + j) % n];
            m.cov_lag[j] += acc / n;
        }
    }
    const double scale = 1.0 / static_cast<double>(kept.size());
    m.mean_Q *= scale;
    m.mean_p *= scale;
    m.var_Q *= scale;
    m.var_p *= scale;
    m.cov_lag *= scale;
    return m;
}

/// Mean of per-replica vectors and the standard error of that mean
/// (cross-replica variance of the per-replica means).
void pool(const std::vector<Eigen::VectorXd>& per_replica, Eigen::VectorXd& mean,
          Eigen::VectorXd& se) {
    const int replicas = static_cast<int>(per_replica.size());
    const long n = per_replica.front().size();
    mean = Eigen::VectorXd::Zero(n);
    for (const auto& v : per_replica) mean += v;
    mean /= static_cast<double>(replicas);

    se = Eigen::VectorXd::Zero(n);
    if (replicas < 2) return;
    for (const auto& v : per_replica) se += (v - mean).cwiseAbs2();
    se = (se / (static_cast<double>(replicas - 1) * replicas)).cwiseSqrt();
}

Eigen::VectorXd z_scores(const Eigen::VectorXd& estimate, const Eigen::VectorXd& target,
                         const Eigen::VectorXd& se) {
    Eigen::VectorXd z(estimate.size());
    for (long i = 0; i < estimate.size(); ++i) {
        const double diff = estimate[i] - target[i];
        if (se[i] > 0.0)
            z[i] = diff / se[i];
        else
            z[i] = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return z;
}

} // namespace

void validate_ensemble_config(const EnsembleConfig& ens, const SimConfig& sim) {
    if (ens.replicas < 1) throw std::invalid_argument("replicas must be at least 1");
    if (ens.burn_in < 0.0 || !std::isfinite(ens.burn_in))
        throw std::invalid_argument("burn_in must be nonnegative");
    if (ens.burn_in >= sim.t_end)
        throw std::invalid_argument("burn_in must be smaller than t_end");
    if (ens.sample_stride < 1) throw std::invalid_argument("sample_stride must be at least 1");
}

double MomentReport::fraction_z_within_3() const {
    if (!has_comparison) return 1.0;
    long total = 0, within = 0;
    for (const auto* z : {&z_mean_Q, &z_mean_p, &z_var_Q, &z_var_p, &z_cov_lag}) {
        for (long i = 0; i < z->size(); ++i) {
            ++total;
            if (std::abs((*z)[i]) <= 3.0) ++within;
        }
    }
    return total == 0 ? 1.0 : static_cast<double>(within) / static_cast<double>(total);
}

MomentReport run_ensemble(const Parameters& params, const SimConfig& sim,
                          const EnsembleConfig& ens) {
    validate_sim_config(sim, params);
    validate_ensemble_config(ens, sim);

    std::vector<ReplicaMoments> slots(ens.replicas);
    for_each_replica(ens.replicas, resolve_threads(ens), [&](int r) {
        SimConfig replica_sim = sim;
        replica_sim.seed = replica_seed(ens.base_seed, static_cast<std::uint64_t>(r));
        const Trajectory traj = simulate(params, replica_sim);
        slots[r] = reduce_replica(traj, params, ens);
    });

    std::vector<Eigen::VectorXd> mean_Q, mean_p, var_Q, var_p, cov_lag;
    for (const auto& s : slots) {
        mean_Q.push_back(s.mean_Q);
        mean_p.push_back(s.mean_p);
        var_Q.push_back(s.var_Q);
        var_p.push_back(s.var_p);
        cov_lag.push_back(s.cov_lag);
    }

    MomentReport report;
    report.replicas = ens.replicas;
    report.kept_samples_per_replica = slots.front().kept;
    for (const auto& s : slots) report.ordering_violations += s.ordering_violations;

    pool(mean_Q, report.mean_Q, report.se_mean_Q);
    pool(mean_p, report.mean_p, report.se_mean_p);
    pool(var_Q, report.var_Q, report.se_var_Q);
    pool(var_p, report.var_p, report.se_var_p);
    pool(cov_lag, report.cov_lag, report.se_cov_lag);

    if (params.gamma > 0.0 && ens.replicas >= 2) {
        const int n = params.n_agents;
        const Eigen::VectorXd v = stationary_v(params);
        const double var_q_target =
            (v[0] - params.sigma * params.sigma / (2.0 * params.gamma * n)) /
            (params.alpha * params.alpha);

        report.has_comparison = true;
        report.target_mean_Q = Eigen::VectorXd::Constant(n, uniform_spacing(params));
        report.target_mean_p = Eigen::VectorXd::Constant(n, params.u);
        report.target_var_Q = Eigen::VectorXd::Constant(n, var_q_target);
        report.target_var_p = Eigen::VectorXd::Constant(n, v[0]);
        report.target_cov_lag = v;

        report.z_mean_Q = z_scores(report.mean_Q, report.target_mean_Q, report.se_mean_Q);
        report.z_mean_p = z_scores(report.mean_p, report.target_mean_p, report.se_mean_p);
        report.z_var_Q = z_scores(report.var_Q, report.target_var_Q, report.se_var_Q);
        report.z_var_p = z_scores(report.var_p, report.target_var_p, report.se_var_p);
        report.z_cov_lag = z_scores(report.cov_lag, report.target_cov_lag, report.se_cov_lag);
    }
    return report;
}

DivergenceReport divergence_probe(const Parameters& params, const SimConfig& sim,
                                  const EnsembleConfig& ens) {
    if (params.gamma != 0.0)
        throw std::invalid_argument("divergence probe requires gamma = 0 (controlled runs are stable)");
    if (ens.replicas < 2)
        throw std::invalid_argument("divergence probe needs at least 2 replicas");
    validate_sim_config(sim, params);
    validate_ensemble_config(ens, sim);

    std::vector<std::vector<double>> pbar_tracks(ens.replicas);
    std::vector<double> times;
    for_each_replica(ens.replicas, resolve_threads(ens), [&](int r) {
        SimConfig replica_sim = sim;
        replica_sim.seed = replica_seed(ens.base_seed, static_cast<std::uint64_t>(r));
        Trajectory traj = simulate(params, replica_sim);
        pbar_tracks[r] = std::move(traj.mean_velocity_track);
        if (r == 0) times = std::move(traj.times);
    });

    const std::size_t samples = times.size();
    const double n_replicas = static_cast<double>(ens.replicas);
    DivergenceReport report;
    report.times = times;
    report.variance.resize(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        double mean = 0.0;
        for (const auto& track : pbar_tracks) mean += track[k];
        mean /= n_replicas;
        double ss = 0.0;
        for (const auto& track : pbar_tracks) {
            const double dev = track[k] - mean;
            ss += dev * dev;
        }
        report.variance[k] = ss / (n_replicas - 1.0);
    }

    // Ordinary least squares of Var(pbar) on time.
    double t_mean = 0.0, v_mean = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        t_mean += report.times[k];
        v_mean += report.variance[k];
    }
    t_mean /= static_cast<double>(samples);
    v_mean /= static_cast<double>(samples);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double dt_k = report.times[k] - t_mean;
        num += dt_k * (report.variance[k] - v_mean);
        den += dt_k * dt_k;
    }
    report.slope = den > 0.0 ? num / den : 0.0;
    report.intercept = v_mean - report.slope * t_mean;
    report.expected_slope = params.sigma * params.sigma / params.n_agents;
    return report;
}

DriftCheckReport hamiltonian_drift_check(const Parameters& params, const SimConfig& sim,
                                         const EnsembleConfig& ens) {
    validate_sim_config(sim, params);
    validate_ensemble_config(ens, sim);

    std::vector<double> observed(ens.replicas), predicted(ens.replicas);
    for_each_replica(ens.replicas, resolve_threads(ens), [&](int r) {
        SimConfig replica_sim = sim;
        replica_sim.seed = replica_seed(ens.base_seed, static_cast<std::uint64_t>(r));
        const Trajectory traj = simulate(params, replica_sim);

        const double threshold = ens.burn_in * (1.0 - 1e-12);
        double obs = 0.0, pred = 0.0;
        long pairs = 0;
        for (long k = 0; k + 1 < traj.samples(); ++k) {
            if (traj.times[k] < threshold) continue;
            const double delta = traj.times[k + 1] - traj.times[k];
            obs += (traj.hamiltonian_track[k + 1] - traj.hamiltonian_track[k]) / delta;
            pred += hamiltonian_expected_drift(traj.states[k], params);
            ++pairs;
        }
        if (pairs == 0) throw std::invalid_argument("no sample pairs remain after burn-in");
        observed[r] = obs / static_cast<double>(pairs);
        predicted[r] = pred / static_cast<double>(pairs);
    });

    DriftCheckReport report;
    const double n_replicas = static_cast<double>(ens.replicas);
    for (int r = 0; r < ens.replicas; ++r) {
        report.observed += observed[r];
        report.predicted += predicted[r];
    }
    report.observed /= n_replicas;
    report.predicted /= n_replicas;
    report.difference = report.observed - report.predicted;

    if (ens.replicas >= 2) {
        double ss = 0.0;
        for (int r = 0; r < ens.replicas; ++r) {
            const double diff = observed[r] - predicted[r] - report.difference;
            ss += diff * diff;
        }
        report.se_difference = std::sqrt(ss / ((n_replicas - 1.0) * n_replicas));
    }
    return report;
}

} // namespace phsf

// Command-line front end: simulate / spectrum / covariance / validate / sweep.
// Exit codes: 0 success, 2 configuration error, 3 numerical-check failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "phsf/config.hpp"
#include "phsf/csv_io.hpp"
#include "phsf/errors.hpp"
#include "phsf/integrator.hpp"
#include "phsf/manifest.hpp"
#include "phsf/mc_harness.hpp"
#include "phsf/spectral.hpp"
#include "phsf/stationary.hpp"
#include "phsf/system_matrices.hpp"

namespace fs = std::filesystem;
using namespace phsf;

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;
constexpr const char* kManifestName = "manifest.json";

/// Collects files written by one subcommand so partial outputs can be
/// removed if the run fails.
class OutputDir {
public:
    explicit OutputDir(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

    void write(const std::string& name, const std::string& content) {
        const fs::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
        out << content;
        out.close();
        if (!out) throw std::runtime_error("failed writing " + path.string());
        written_.push_back(path);
        names_.push_back(name);
    }

    const std::vector<std::string>& names() const { return names_; }

    void discard_all() {
        for (const auto& path : written_) {
            std::error_code ec;
            fs::remove(path, ec);
        }
        written_.clear();
        names_.clear();
    }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
    std::vector<std::string> names_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Accepts either the flat key = value format or a previously written run
/// manifest (JSON), so any output can be reproduced from its manifest alone.
RunConfig load_config(const std::string& path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return config_from_manifest_json(text);
    return parse_config(text);
}

void warn_stability(const RunConfig& cfg) {
    const double factor = em_stability_factor(cfg.params, cfg.sim.dt);
    if (factor > 1.0)
        std::cerr << "warning: dt * (4 beta + gamma) = " << factor
                  << " > 1; the explicit scheme may be unstable at this step size\n";
}

std::string manifest_comment() {
    return std::string("manifest: ") + kManifestName;
}

void finish(OutputDir& out, RunManifest manifest) {
    manifest.outputs = out.names();
    out.write(kManifestName, manifest_to_json(manifest));
}

// ---------------------------------------------------------------------------

int run_simulate(const std::string& config_path, const std::string& out_dir) {
    const RunConfig cfg = load_config(config_path);
    warn_stability(cfg);

    OutputDir out(out_dir);
    try {
        const Trajectory traj = simulate(cfg.params, cfg.sim);
        if (traj.ordering_violations > 0)
            std::cerr << "note: distances went negative on " << traj.ordering_violations
                      << " steps (overtaking is not prevented)\n";
        out.write("trajectory.csv", trajectory_to_csv(traj, cfg.params, manifest_comment()));
        finish(out, make_manifest("simulate", cfg));
        std::cout << "wrote trajectory.csv (" << traj.samples() << " samples)\n";
        return 0;
    } catch (...) {
        out.discard_all();
        throw;
    }
}

int run_spectrum(const std::string& config_path, const std::string& out_dir) {
    const RunConfig cfg = load_config(config_path);

    OutputDir out(out_dir);
    try {
        const SpectralDecomposition dec = eigenvalues(cfg.params);
        const StabilityVerdict verdict = is_asymptotically_stable(cfg.params);
        const int n = cfg.params.n_agents;

        std::ostringstream csv;
        csv << "# " << manifest_comment() << "\n";
        csv << "j,k,re,im,mu_j\n";
        for (int j = 0; j < n; ++j) {
            for (int k = 1; k <= 2; ++k) {
                const auto lambda = dec.lambda(j, k);
                csv << j << ',' << k << ',' << format_double(lambda.real()) << ','
                    << format_double(lambda.imag()) << ','
                    << format_double(dec.mode_factors[j]) << '\n';
            }
        }
        out.write("eigenvalues.csv", csv.str());

        nlohmann::json report;
        report["manifest"] = kManifestName;
        report["stable"] = verdict.stable;
        report["max_real_part_nonzero_modes"] = verdict.max_real_part_nonzero_modes;
        report["n_eigenvalues"] = 2 * n;

        std::optional<double> oracle_distance;
        if (n <= kDenseMatrixLimit) {
            const auto dense = dense_spectrum_oracle(cfg.params);
            oracle_distance = multiset_distance(dec.eigenvalues, dense);
            report["oracle"]["multiset_distance"] = *oracle_distance;
            report["oracle"]["tolerance"] = 1e-8;
        }
        out.write("spectrum.json", report.dump(2) + "\n");
        finish(out, make_manifest("spectrum", cfg));

        std::cout << "spectrum: " << (verdict.stable ? "stable" : "not asymptotically stable")
                  << ", max nonzero-mode real part = " << verdict.max_real_part_nonzero_modes
                  << "\n";
        // Outputs are complete at this point; a failed cross-check keeps them
        // on disk for inspection and only changes the exit code.
        if (oracle_distance && !(*oracle_distance < 1e-8))
            throw NumericalError("closed-form and dense eigenvalues disagree: distance " +
                                 format_double(*oracle_distance));
        return 0;
    } catch (const NumericalError&) {
        throw;
    } catch (...) {
        out.discard_all();
        throw;
    }
}

int run_covariance(const std::string& config_path, const std::string& out_dir) {
    const RunConfig cfg = load_config(config_path);

    OutputDir out(out_dir);
    try {
        const StationaryCovariance cov = stationary_covariance(cfg.params);
        const int n = cfg.params.n_agents;
        const bool have_limit = cfg.params.beta > 0.0;

        std::ostringstream vcsv;
        vcsv << "# " << manifest_comment() << "\n";
        vcsv << "j,v_j,v_limit_j\n";
        for (int j = 0; j < n; ++j) {
            vcsv << j << ',' << format_double(cov.v[j]) << ',';
            if (have_limit) vcsv << format_double(limit_covariance(cfg.params, j));
            vcsv << '\n';
        }
        out.write("v.csv", vcsv.str());
        out.write("sigma.csv", matrix_to_csv(cov.Sigma, manifest_comment()));

        const double residual = lyapunov_residual(cov.Sigma, cfg.params);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> psd(cov.Sigma,
                                                           Eigen::EigenvaluesOnly);
        const double min_eig = psd.eigenvalues().minCoeff();

        nlohmann::json report;
        report["manifest"] = kManifestName;
        report["lyapunov_residual"] = residual;
        report["residual_tolerance"] = 1e-9 * cfg.params.sigma * cfg.params.sigma;
        report["v_sum"] = cov.v.sum();
        report["v_sum_expected"] =
            cfg.params.sigma * cfg.params.sigma / (2.0 * cfg.params.gamma);
        report["sigma_min_eigenvalue"] = min_eig;
        if (have_limit) {
            const LimitCovariance limit = limit_covariance_constants(cfg.params);
            report["limit"]["F"] = limit.F;
            report["limit"]["a"] = limit.a;
        }
        out.write("covariance.json", report.dump(2) + "\n");
        finish(out, make_manifest("covariance", cfg));

        std::cout << "covariance: v0 = " << cov.v[0] << ", Lyapunov residual = " << residual
                  << "\n";
        if (!(residual <= 1e-9 * cfg.params.sigma * cfg.params.sigma + 1e-15))
            throw NumericalError("Lyapunov residual " + format_double(residual) +
                                 " exceeds tolerance");
        if (min_eig < -1e-10)
            throw NumericalError("stationary covariance is not positive semi-definite");
        return 0;
    } catch (const NumericalError&) {
        throw;
    } catch (...) {
        out.discard_all();
        throw;
    }
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (long i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

int run_validate(const std::string& config_path, const std::string& out_dir) {
    const RunConfig cfg = load_config(config_path);
    if (cfg.ensemble.replicas < 2)
        throw ConfigError("validate needs replicas >= 2 for cross-replica statistics");
    warn_stability(cfg);

    OutputDir out(out_dir);
    try {
        nlohmann::json report;
        report["manifest"] = kManifestName;
        bool ok = true;
        std::string summary;

        if (cfg.params.gamma > 0.0) {
            const MomentReport moments = run_ensemble(cfg.params, cfg.sim, cfg.ensemble);
            report["mode"] = "stationary-comparison";
            report["replicas"] = moments.replicas;
            report["kept_samples_per_replica"] = moments.kept_samples_per_replica;
            report["ordering_violations"] = moments.ordering_violations;
            report["empirical"]["mean_Q"] = vector_json(moments.mean_Q);
            report["empirical"]["mean_p"] = vector_json(moments.mean_p);
            report["empirical"]["var_Q"] = vector_json(moments.var_Q);
            report["empirical"]["var_p"] = vector_json(moments.var_p);
            report["empirical"]["cov_lag"] = vector_json(moments.cov_lag);
            report["standard_errors"]["mean_Q"] = vector_json(moments.se_mean_Q);
            report["standard_errors"]["mean_p"] = vector_json(moments.se_mean_p);
            report["standard_errors"]["var_Q"] = vector_json(moments.se_var_Q);
            report["standard_errors"]["var_p"] = vector_json(moments.se_var_p);
            report["standard_errors"]["cov_lag"] = vector_json(moments.se_cov_lag);
            report["targets"]["mean_Q"] = vector_json(moments.target_mean_Q);
            report["targets"]["mean_p"] = vector_json(moments.target_mean_p);
            report["targets"]["var_Q"] = vector_json(moments.target_var_Q);
            report["targets"]["var_p"] = vector_json(moments.target_var_p);
            report["targets"]["cov_lag"] = vector_json(moments.target_cov_lag);
            report["z_scores"]["mean_Q"] = vector_json(moments.z_mean_Q);
            report["z_scores"]["mean_p"] = vector_json(moments.z_mean_p);
            report["z_scores"]["var_Q"] = vector_json(moments.z_var_Q);
            report["z_scores"]["var_p"] = vector_json(moments.z_var_p);
            report["z_scores"]["cov_lag"] = vector_json(moments.z_cov_lag);
            const double fraction = moments.fraction_z_within_3();
            report["fraction_z_within_3"] = fraction;
            report["pass_threshold"] = 0.95;
            ok = fraction >= 0.95;
            report["pass"] = ok;
            summary = "stationary comparison: " + format_double(fraction * 100.0) +
                      "% of z-scores within +-3";
        } else {
            const DivergenceReport probe = divergence_probe(cfg.params, cfg.sim, cfg.ensemble);
            const double rel_err =
                std::abs(probe.slope - probe.expected_slope) / probe.expected_slope;
            report["mode"] = "divergence-probe";
            report["replicas"] = cfg.ensemble.replicas;
            report["slope"] = probe.slope;
            report["intercept"] = probe.intercept;
            report["expected_slope"] = probe.expected_slope;
            report["relative_error"] = rel_err;
            report["pass_threshold"] = 0.15;
            ok = rel_err <= 0.15;
            report["pass"] = ok;
            summary = "divergence probe: slope " + format_double(probe.slope) + " vs expected " +
                      format_double(probe.expected_slope);
        }

        out.write("report.json", report.dump(2) + "\n");
        finish(out, make_manifest("validate", cfg));
        std::cout << summary << "\n";
        if (!ok) throw NumericalError("validation statistics fall outside tolerance");
        return 0;
    } catch (const NumericalError&) {
        throw;
    } catch (...) {
        out.discard_all();
        throw;
    }
}

struct SweepAxis {
    std::string key;
    double start = 0.0, end = 0.0, step = 0.0;
};

SweepAxis parse_vary(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--vary expects key=start:end:step, got '" + spec + "'");
    SweepAxis axis;
    axis.key = spec.substr(0, eq);
    const std::string grid = spec.substr(eq + 1);
    const auto c1 = grid.find(':');
    const auto c2 = grid.find(':', c1 == std::string::npos ? 0 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ConfigError("--vary expects key=start:end:step, got '" + spec + "'");
    try {
        axis.start = parse_double(grid.substr(0, c1));
        axis.end = parse_double(grid.substr(c1 + 1, c2 - c1 - 1));
        axis.step = parse_double(grid.substr(c2 + 1));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("--vary: ") + e.what());
    }
    if (!(axis.step > 0.0) || axis.end < axis.start)
        throw ConfigError("--vary needs step > 0 and end >= start");
    return axis;
}

void set_swept_value(Parameters& params, const std::string& key, double value) {
    if (key == "alpha")
        params.alpha = value;
    else if (key == "beta")
        params.beta = value;
    else if (key == "gamma")
        params.gamma = value;
    else if (key == "sigma")
        params.sigma = value;
    else if (key == "u")
        params.u = value;
    else if (key == "ring_length")
        params.ring_length = value;
    else
        throw ConfigError("--vary key must be one of alpha, beta, gamma, sigma, u, ring_length");
}

int run_sweep(const std::string& config_path, const std::string& out_dir,
              const std::string& vary_spec) {
    const RunConfig cfg = load_config(config_path);
    const SweepAxis axis = parse_vary(vary_spec);

    const long count = static_cast<long>(std::floor((axis.end - axis.start) / axis.step + 0.5)) + 1;

    OutputDir out(out_dir);
    try {
        std::ostringstream csv;
        csv << "# " << manifest_comment() << "\n";
        csv << axis.key << ",stable,max_re_nonzero,v0,v_sum,lyap_residual,v_limit0\n";
        for (long i = 0; i < count; ++i) {
            const double value = axis.start + static_cast<double>(i) * axis.step;
            Parameters params = cfg.params;
            set_swept_value(params, axis.key, value);
            params = validate_parameters(params);

            const StabilityVerdict verdict = is_asymptotically_stable(params);
            csv << format_double(value) << ',' << (verdict.stable ? 1 : 0) << ','
                << format_double(verdict.max_real_part_nonzero_modes) << ',';

            if (params.gamma > 0.0) {
                const Eigen::VectorXd v = stationary_v(params);
                csv << format_double(v[0]) << ',' << format_double(v.sum()) << ',';
                if (params.n_agents <= kDenseMatrixLimit) {
                    const StationaryCovariance cov = stationary_covariance(params);
                    csv << format_double(lyapunov_residual(cov.Sigma, params));
                }
                csv << ',';
                if (params.beta > 0.0) csv << format_double(limit_covariance(params, 0));
            } else {
                // No stationary law at gamma = 0; covariance columns stay empty.
                csv << ",,,";
            }
            csv << '\n';
        }
        out.write("sweep.csv", csv.str());
        finish(out, make_manifest("sweep", cfg));
        std::cout << "wrote sweep.csv (" << count << " grid points over " << axis.key << ")\n";
        return 0;
    } catch (...) {
        out.discard_all();
        throw;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic port-Hamiltonian single-file ring dynamics"};
    app.require_subcommand(1);

    std::string config_path, out_dir, vary_spec;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path,
                        "run configuration file (key = value, or a manifest.json)")
            ->required();
        sub->add_option("--out", out_dir, "output directory (created if absent)")->required();
        return sub;
    };

    CLI::App* simulate_cmd =
        add_common(app.add_subcommand("simulate", "integrate one trajectory and write CSV"));
    CLI::App* spectrum_cmd = add_common(
        app.add_subcommand("spectrum", "closed-form eigenvalues, stability, dense cross-check"));
    CLI::App* covariance_cmd = add_common(app.add_subcommand(
        "covariance", "stationary covariance, Lyapunov residual, large-N limit"));
    CLI::App* validate_cmd = add_common(app.add_subcommand(
        "validate", "Monte-Carlo moments vs closed form (or divergence probe)"));
    CLI::App* sweep_cmd = add_common(
        app.add_subcommand("sweep", "repeat spectrum/covariance over a parameter grid"));
    sweep_cmd->add_option("--vary", vary_spec, "grid spec key=start:end:step")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    try {
        if (simulate_cmd->parsed()) return run_simulate(config_path, out_dir);
        if (spectrum_cmd->parsed()) return run_spectrum(config_path, out_dir);
        if (covariance_cmd->parsed()) return run_covariance(config_path, out_dir);
        if (validate_cmd->parsed()) return run_validate(config_path, out_dir);
        if (sweep_cmd->parsed()) return run_sweep(config_path, out_dir, vary_spec);
    } catch (const NumericalError& e) {
        std::cerr << "numerical check failed: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include <optional>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "phsf/config.hpp"
#include "phsf/errors.hpp"
#include "phsf/csv_io.hpp"
#include "phsf/dynamics.hpp"
#include "phsf/integrator.hpp"
#include "phsf/manifest.hpp"
#include "phsf/mc_harness.hpp"
#include "phsf/parameters.hpp"
#include "phsf/potential.hpp"
#include "phsf/spectral.hpp"
#include "phsf/state.hpp"
#include "phsf/stationary.hpp"
#include "phsf/system_matrices.hpp"

namespace py = pybind11;
using namespace phsf;

namespace {

Eigen::MatrixXd stack_Q(const Trajectory& t) {
    const long samples = t.samples();
    const long n = samples > 0 ? t.states.front().Q.size() : 0;
    Eigen::MatrixXd m(samples, n);
    for (long s = 0; s < samples; ++s) m.row(s) = t.states[s].Q.transpose();
    return m;
}

Eigen::MatrixXd stack_p(const Trajectory& t) {
    const long samples = t.samples();
    const long n = samples > 0 ? t.states.front().p.size() : 0;
    Eigen::MatrixXd m(samples, n);
    for (long s = 0; s < samples; ++s) m.row(s) = t.states[s].p.transpose();
    return m;
}

Eigen::MatrixXcd eigenvalue_table(const SpectralDecomposition& dec) {
    const long n = static_cast<long>(dec.mode_factors.size());
    Eigen::MatrixXcd table(n, 2);
    for (long j = 0; j < n; ++j) {
        table(j, 0) = dec.eigenvalues[2 * j];
        table(j, 1) = dec.eigenvalues[2 * j + 1];
    }
    return table;
}

} // namespace

PYBIND11_MODULE(_phsf, m) {
    m.doc() = "stochastic port-Hamiltonian single-file ring dynamics";

    py::class_<Parameters>(m, "Parameters")
        .def(py::init([](int n_agents, double ring_length, double alpha, double beta,
                         double gamma, double sigma, double u) {
                 Parameters p;
                 p.n_agents = n_agents;
                 p.ring_length = ring_length;
                 p.alpha = alpha;
                 p.beta = beta;
                 p.gamma = gamma;
                 p.sigma = sigma;
                 p.u = u;
                 return validate_parameters(p);
             }),
             py::arg("n_agents"), py::arg("ring_length"), py::arg("alpha") = 1.0,
             py::arg("beta") = 1.0, py::arg("gamma") = 0.0, py::arg("sigma") = 1.0,
             py::arg("u") = 0.0)
        .def_readwrite("n_agents", &Parameters::n_agents)
        .def_readwrite("ring_length", &Parameters::ring_length)
        .def_readwrite("alpha", &Parameters::alpha)
        .def_readwrite("beta", &Parameters::beta)
        .def_readwrite("gamma", &Parameters::gamma)
        .def_readwrite("sigma", &Parameters::sigma)
        .def_readwrite("u", &Parameters::u)
        .def("__repr__", [](const Parameters& p) {
            return "Parameters(n_agents=" + std::to_string(p.n_agents) +
                   ", ring_length=" + format_double(p.ring_length) +
                   ", alpha=" + format_double(p.alpha) + ", beta=" + format_double(p.beta) +
                   ", gamma=" + format_double(p.gamma) + ", sigma=" + format_double(p.sigma) +
                   ", u=" + format_double(p.u) + ")";
        });

    m.def("validate_parameters", &validate_parameters, py::arg("params"));
    m.def("uniform_spacing", &uniform_spacing, py::arg("params"));

    py::class_<State>(m, "State")
        .def(py::init([](Eigen::VectorXd Q, Eigen::VectorXd p) {
                 State s;
                 s.Q = std::move(Q);
                 s.p = std::move(p);
                 return s;
             }),
             py::arg("Q"), py::arg("p"))
        .def_readwrite("Q", &State::Q)
        .def_readwrite("p", &State::p);

    m.def("make_uniform_state", &make_uniform_state, py::arg("params"), py::arg("velocity"));
    m.def("distances_from_positions", &distances_from_positions, py::arg("q"),
          py::arg("ring_length"),
          "Distances to the right neighbour from ordered ring positions; sums to L.");
    m.def("potential", &potential, py::arg("x"), py::arg("alpha"));
    m.def("potential_derivative", &potential_derivative, py::arg("x"), py::arg("alpha"));

    py::class_<SystemMatrices>(m, "SystemMatrices")
        .def_readonly("A", &SystemMatrices::A)
        .def_readonly("AtA", &SystemMatrices::AtA)
        .def_readonly("J", &SystemMatrices::J)
        .def_readonly("R", &SystemMatrices::R)
        .def_readonly("B", &SystemMatrices::B)
        .def_readonly("S", &SystemMatrices::S)
        .def_readonly("G", &SystemMatrices::G);
    m.def("build_matrices", &build_matrices, py::arg("params"));

    m.def(
        "drift",
        [](const State& state, const Parameters& params) {
            const Derivative d = drift(state, params);
            return py::make_tuple(d.dQ, d.dp);
        },
        py::arg("state"), py::arg("params"), "Componentwise drift (dQ/dt, dp/dt).");
    m.def("hamiltonian", &hamiltonian, py::arg("state"), py::arg("params"));
    m.def("hamiltonian_dissipation_rate", &hamiltonian_dissipation_rate, py::arg("state"),
          py::arg("params"));
    m.def("hamiltonian_expected_drift", &hamiltonian_expected_drift, py::arg("state"),
          py::arg("params"));

    py::enum_<InitialCondition>(m, "InitialCondition")
        .value("uniform_rest", InitialCondition::uniform_rest)
        .value("uniform_speed", InitialCondition::uniform_speed)
        .value("explicit_state", InitialCondition::explicit_state);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init([](double dt, double t_end, std::uint64_t seed, long record_every,
                         InitialCondition initial_condition, std::optional<State> initial_state) {
                 SimConfig cfg;
                 cfg.dt = dt;
                 cfg.t_end = t_end;
                 cfg.seed = seed;
                 cfg.record_every = record_every;
                 cfg.initial_condition = initial_condition;
                 if (initial_state) {
                     cfg.initial_state = *initial_state;
                     cfg.initial_condition = InitialCondition::explicit_state;
                 }
                 return cfg;
             }),
             py::arg("dt") = 1e-3, py::arg("t_end") = 1.0, py::arg("seed") = 0,
             py::arg("record_every") = 1,
             py::arg("initial_condition") = InitialCondition::uniform_rest,
             py::arg("initial_state") = py::none())
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("t_end", &SimConfig::t_end)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("record_every", &SimConfig::record_every)
        .def_readwrite("initial_condition", &SimConfig::initial_condition)
        .def_readwrite("initial_state", &SimConfig::initial_state);

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("times",
                               [](const Trajectory& t) {
                                   return Eigen::Map<const Eigen::VectorXd>(
                                              t.times.data(), static_cast<long>(t.times.size()))
                                       .eval();
                               })
        .def_property_readonly("Q", &stack_Q, "samples x N distance snapshots")
        .def_property_readonly("p", &stack_p, "samples x N velocity snapshots")
        .def_property_readonly("q1",
                               [](const Trajectory& t) {
                                   return Eigen::Map<const Eigen::VectorXd>(
                                              t.q1_track.data(),
                                              static_cast<long>(t.q1_track.size()))
                                       .eval();
                               })
        .def_property_readonly("hamiltonian",
                               [](const Trajectory& t) {
                                   return Eigen::Map<const Eigen::VectorXd>(
                                              t.hamiltonian_track.data(),
                                              static_cast<long>(t.hamiltonian_track.size()))
                                       .eval();
                               })
        .def_property_readonly("mean_velocity",
                               [](const Trajectory& t) {
                                   return Eigen::Map<const Eigen::VectorXd>(
                                              t.mean_velocity_track.data(),
                                              static_cast<long>(t.mean_velocity_track.size()))
                                       .eval();
                               })
        .def_readonly("ordering_violations", &Trajectory::ordering_violations)
        .def_readonly("stability_warning", &Trajectory::stability_warning)
        .def("samples", &Trajectory::samples);

    m.def("em_step", &em_step, py::arg("state"), py::arg("params"), py::arg("dt"),
          py::arg("noise"),
          "One Euler-Maruyama step; noise holds N independent standard normals.");
    m.def("simulate", &simulate, py::arg("params"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>(),
          "Integrate the SDE and record every record_every-th step.");
    m.def("em_stability_factor", &em_stability_factor, py::arg("params"), py::arg("dt"));

    m.def(
        "mean_velocity_statistics",
        [](const std::vector<Trajectory>& replicas) {
            const MeanVelocityStatistics stats = mean_velocity_statistics(replicas);
            return py::make_tuple(stats.times, stats.variance);
        },
        py::arg("replicas"), "Cross-replica variance of the mean velocity per sample time.");

    py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
        .def_property_readonly("mode_factors",
                               [](const SpectralDecomposition& d) { return d.mode_factors; })
        .def_property_readonly("eigenvalues", &eigenvalue_table,
                               "N x 2 complex table; column k-1 holds lambda_{j,k}")
        .def("eigenvalue", &SpectralDecomposition::lambda, py::arg("j"), py::arg("k"));

    m.def("mode_factors", &mode_factors, py::arg("n_agents"));
    m.def("eigenvalues", &eigenvalues, py::arg("params"));
    m.def(
        "is_asymptotically_stable",
        [](const Parameters& params) {
            const StabilityVerdict v = is_asymptotically_stable(params);
            return py::make_tuple(v.stable, v.max_real_part_nonzero_modes);
        },
        py::arg("params"), "(stable, max real part over modes other than the zero mode)");
    m.def("dense_spectrum_oracle", &dense_spectrum_oracle, py::arg("params"),
          "Numerical eigenvalues of the materialized drift matrix.");
    m.def("multiset_distance", &multiset_distance, py::arg("a"), py::arg("b"));

    py::class_<StationaryCovariance>(m, "StationaryCovariance")
        .def_readonly("v", &StationaryCovariance::v)
        .def_readonly("V1", &StationaryCovariance::V1)
        .def_readonly("V2", &StationaryCovariance::V2)
        .def_readonly("V3", &StationaryCovariance::V3)
        .def_readonly("Sigma", &StationaryCovariance::Sigma)
        .def_readonly("mean", &StationaryCovariance::mean);

    py::class_<LimitCovariance>(m, "LimitCovariance")
        .def_readonly("F", &LimitCovariance::F)
        .def_readonly("a", &LimitCovariance::a)
        .def_readonly("sigma2", &LimitCovariance::sigma2)
        .def("value", &LimitCovariance::value, py::arg("j"));

    m.def("stationary_v", &stationary_v, py::arg("params"));
    m.def("stationary_covariance", &stationary_covariance, py::arg("params"));
    m.def("lyapunov_residual", &lyapunov_residual, py::arg("Sigma"), py::arg("params"));
    m.def("limit_covariance_constants", &limit_covariance_constants, py::arg("params"));
    m.def("limit_covariance", &limit_covariance, py::arg("params"), py::arg("j"));

    py::class_<EnsembleConfig>(m, "EnsembleConfig")
        .def(py::init([](int replicas, double burn_in, long sample_stride,
                         std::uint64_t base_seed, int n_threads) {
                 EnsembleConfig ens;
                 ens.replicas = replicas;
                 ens.burn_in = burn_in;
                 ens.sample_stride = sample_stride;
                 ens.base_seed = base_seed;
                 ens.n_threads = n_threads;
                 return ens;
             }),
             py::arg("replicas") = 1, py::arg("burn_in") = 0.0, py::arg("sample_stride") = 1,
             py::arg("base_seed") = 0, py::arg("n_threads") = 0)
        .def_readwrite("replicas", &EnsembleConfig::replicas)
        .def_readwrite("burn_in", &EnsembleConfig::burn_in)
        .def_readwrite("sample_stride", &EnsembleConfig::sample_stride)
        .def_readwrite("base_seed", &EnsembleConfig::base_seed)
        .def_readwrite("n_threads", &EnsembleConfig::n_threads);

    py::class_<MomentReport>(m, "MomentReport")
        .def_readonly("replicas", &MomentReport::replicas)
        .def_readonly("kept_samples_per_replica", &MomentReport::kept_samples_per_replica)
        .def_readonly("ordering_violations", &MomentReport::ordering_violations)
        .def_readonly("mean_Q", &MomentReport::mean_Q)
        .def_readonly("mean_p", &MomentReport::mean_p)
        .def_readonly("var_Q", &MomentReport::var_Q)
        .def_readonly("var_p", &MomentReport::var_p)
        .def_readonly("cov_lag", &MomentReport::cov_lag)
        .def_readonly("se_mean_Q", &MomentReport::se_mean_Q)
        .def_readonly("se_mean_p", &MomentReport::se_mean_p)
        .def_readonly("se_var_Q", &MomentReport::se_var_Q)
        .def_readonly("se_var_p", &MomentReport::se_var_p)
        .def_readonly("se_cov_lag", &MomentReport::se_cov_lag)
        .def_readonly("has_comparison", &MomentReport::has_comparison)
        .def_readonly("target_mean_Q", &MomentReport::target_mean_Q)
        .def_readonly("target_mean_p", &MomentReport::target_mean_p)
        .def_readonly("target_var_Q", &MomentReport::target_var_Q)
        .def_readonly("target_var_p", &MomentReport::target_var_p)
        .def_readonly("target_cov_lag", &MomentReport::target_cov_lag)
        .def_readonly("z_mean_Q", &MomentReport::z_mean_Q)
        .def_readonly("z_mean_p", &MomentReport::z_mean_p)
        .def_readonly("z_var_Q", &MomentReport::z_var_Q)
        .def_readonly("z_var_p", &MomentReport::z_var_p)
        .def_readonly("z_cov_lag", &MomentReport::z_cov_lag)
        .def("fraction_z_within_3", &MomentReport::fraction_z_within_3);

    py::class_<DivergenceReport>(m, "DivergenceReport")
        .def_readonly("slope", &DivergenceReport::slope)
        .def_readonly("intercept", &DivergenceReport::intercept)
        .def_readonly("expected_slope", &DivergenceReport::expected_slope)
        .def_readonly("times", &DivergenceReport::times)
        .def_readonly("variance", &DivergenceReport::variance);

    py::class_<DriftCheckReport>(m, "DriftCheckReport")
        .def_readonly("observed", &DriftCheckReport::observed)
        .def_readonly("predicted", &DriftCheckReport::predicted)
        .def_readonly("difference", &DriftCheckReport::difference)
        .def_readonly("se_difference", &DriftCheckReport::se_difference);

    m.def("run_ensemble", &run_ensemble, py::arg("params"), py::arg("sim"), py::arg("ens"),
          py::call_guard<py::gil_scoped_release>());
    m.def("divergence_probe", &divergence_probe, py::arg("params"), py::arg("sim"),
          py::arg("ens"), py::call_guard<py::gil_scoped_release>());
    m.def("hamiltonian_drift_check", &hamiltonian_drift_check, py::arg("params"), py::arg("sim"),
          py::arg("ens"), py::call_guard<py::gil_scoped_release>());

    py::class_<RunConfig>(m, "RunConfig")
        .def_readwrite("params", &RunConfig::params)
        .def_readwrite("sim", &RunConfig::sim)
        .def_readwrite("ensemble", &RunConfig::ensemble);
    m.def("parse_config", &parse_config, py::arg("text"),
          "Parse the flat key = value run configuration format.");
    m.def("serialize_config", &serialize_config, py::arg("config"));

    m.attr("__version__") = kToolVersion;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
}

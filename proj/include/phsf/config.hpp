#pragma once

#include <stdexcept>
#include <string>

#include "phsf/integrator.hpp"
#include "phsf/mc_harness.hpp"
#include "phsf/parameters.hpp"

namespace phsf {

/// Malformed or invalid run configuration (syntax errors carry the 1-based
/// line number in the message).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Fully resolved run configuration.
struct RunConfig {
    Parameters params;
    SimConfig sim;
    EnsembleConfig ensemble;
};

/// Parses the flat `key = value` format (one pair per line, '#' comments,
/// unknown keys rejected). n_agents is the only key without a default.
/// Defaults: ring_length=501, alpha=1, beta=1, gamma=1, sigma=1, u=0,
/// dt=0.001, t_end=500, seed=42, record_every=100, initial_condition=
/// uniform_rest, replicas=1, burn_in=10/gamma (0 when gamma=0),
/// sample_stride=1. Throws ConfigError / std::invalid_argument.
RunConfig parse_config(const std::string& text);

/// Canonical serialization of a resolved configuration; parsing it back
/// yields a bit-identical RunConfig. Embedded in run manifests.
std::string serialize_config(const RunConfig& config);

} // namespace phsf

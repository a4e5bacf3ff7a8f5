#include "phsf/parameters.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace phsf {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

bool finite(double x) { return std::isfinite(x); }

} // namespace

Parameters validate_parameters(const Parameters& raw) {
    require(raw.n_agents >= 3,
            "n_agents must be at least 3, got " + std::to_string(raw.n_agents));
    require(finite(raw.ring_length) && raw.ring_length > 0.0,
            "ring_length must be positive");
    require(finite(raw.alpha) && raw.alpha > 0.0, "alpha must be positive");
    require(finite(raw.beta) && raw.beta >= 0.0, "beta must be nonnegative");
    require(finite(raw.gamma) && raw.gamma >= 0.0, "gamma must be nonnegative");
    require(finite(raw.sigma) && raw.sigma >= 0.0, "sigma must be nonnegative");
    require(finite(raw.u), "u must be finite");
    return raw;
}

double uniform_spacing(const Parameters& params) {
    return params.ring_length / params.n_agents;
}

} // namespace phsf

#pragma once

#include <cstdint>

namespace phsf {

/// Physical and model constants of the single-file ring system.
///
/// N agents move on a ring of length L. Neighbouring agents interact through
/// the quadratic distance potential U(x) = (alpha*x)^2 / 2, velocities diffuse
/// towards their neighbours at rate beta, relax towards the desired velocity u
/// at rate gamma, and are driven by white noise of volatility sigma.
struct Parameters {
    int n_agents = 0;         // N >= 3
    double ring_length = 0.0; // L > 0
    double alpha = 1.0;       // potential stiffness, 1/time, > 0
    double beta = 1.0;        // dissipation rate, 1/time, >= 0
    double gamma = 0.0;       // relaxation rate, 1/time, >= 0
    double sigma = 1.0;       // noise volatility, >= 0
    double u = 0.0;           // desired velocity
};

/// Checks the admissible parameter domain and returns the parameters
/// unchanged. Throws std::invalid_argument naming the offending field.
Parameters validate_parameters(const Parameters& raw);

/// Equilibrium spacing L/N.
double uniform_spacing(const Parameters& params);

} // namespace phsf

#pragma once

namespace phsf {

/// Quadratic neighbour potential U(x) = (alpha*x)^2 / 2, defined on all of R.
inline double potential(double x, double alpha) {
    const double ax = alpha * x;
    return 0.5 * ax * ax;
}

/// U'(x) = alpha^2 * x.
inline double potential_derivative(double x, double alpha) {
    return alpha * alpha * x;
}

} // namespace phsf

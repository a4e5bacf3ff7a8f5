#include "phsf/state.hpp"

#include <stdexcept>
#include <string>

namespace phsf {

State make_uniform_state(const Parameters& params, double velocity) {
    State state;
    state.Q = Eigen::VectorXd::Constant(params.n_agents, uniform_spacing(params));
    state.p = Eigen::VectorXd::Constant(params.n_agents, velocity);
    return state;
}

Eigen::VectorXd distances_from_positions(const Eigen::VectorXd& q, double ring_length) {
    const long n = q.size();
    if (n < 1) throw std::invalid_argument("positions vector is empty");

    Eigen::VectorXd Q(n);
    for (long i = 0; i + 1 < n; ++i) Q[i] = q[i + 1] - q[i];
    Q[n - 1] = ring_length + q[0] - q[n - 1];

    for (long i = 0; i < n; ++i) {
        if (Q[i] < 0.0)
            throw std::invalid_argument("positions are not ordered on the ring: distance " +
                                        std::to_string(i + 1) + " is negative");
    }
    return Q;
}

} // namespace phsf

#include "phsf/dynamics.hpp"

#include <stdexcept>

#include "phsf/potential.hpp"
#include "phsf/system_matrices.hpp"

namespace phsf {

void drift_into(const State& state, const Parameters& params, Derivative& out) {
    const long n = state.Q.size();
    if (n != params.n_agents || state.p.size() != n)
        throw std::invalid_argument("state dimension does not match n_agents");

    out.dQ.resize(n);
    out.dp.resize(n);

    const double a2 = params.alpha * params.alpha;
    const double beta = params.beta;
    const double gamma = params.gamma;
    const double u = params.u;
    const auto& Q = state.Q;
    const auto& p = state.p;

    for (long i = 0; i < n; ++i) {
        const long right = (i + 1 == n) ? 0 : i + 1;
        const long left = (i == 0) ? n - 1 : i - 1;
        out.dQ[i] = p[right] - p[i];
        out.dp[i] = a2 * (Q[i] - Q[left]) +
                    beta * (p[right] - 2.0 * p[i] + p[left]) +
                    gamma * (u - p[i]);
    }
}

Derivative drift(const State& state, const Parameters& params) {
    Derivative d;
    drift_into(state, params, d);
    return d;
}

double hamiltonian(const State& state, const Parameters& params) {
    double h = 0.5 * state.p.squaredNorm();
    for (long i = 0; i < state.Q.size(); ++i) h += potential(state.Q[i], params.alpha);
    return h;
}

double hamiltonian_dissipation_rate(const State& state, const Parameters& params) {
    const Eigen::VectorXd shifted = state.p.array() - params.u;
    return -params.beta * squared_norm_A(shifted) - params.gamma * shifted.squaredNorm();
}

double hamiltonian_expected_drift(const State& state, const Parameters& params) {
    const long n = state.p.size();
    const double relax = (Eigen::VectorXd::Constant(n, params.u) - state.p).dot(state.p);
    return -params.beta * squared_norm_A(state.p) + params.gamma * relax +
           0.5 * static_cast<double>(n) * params.sigma * params.sigma;
}

} // namespace phsf

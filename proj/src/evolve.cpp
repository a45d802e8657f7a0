#include "qkr/evolve.hpp"

#include <cmath>

namespace qkr {

int required_k_max(int support_width, int n_steps, double kappa) {
    return static_cast<int>(
        std::ceil(0.5 * support_width + n_steps * std::abs(kappa) + 40.0));
}

StepRecord observe(const SpinorState& s, int n, int margin, double threshold) {
    StepRecord r;
    r.n = n;
    Moments m = moments(s);
    r.m1 = m.m1;
    r.m2 = m.m2;
    r.variance = m.variance;
    ReducedDensityMatrix rho = reduced_density(s);
    r.p_g = rho.p_g;
    r.p_e = rho.p_e;
    r.q = rho.q;
    r.norm = rho.p_g + rho.p_e;
    // Entropy expects a trace-1 matrix; normalize away truncation loss.
    if (r.norm > 0.0) {
        ReducedDensityMatrix unit{rho.p_g / r.norm, rho.p_e / r.norm,
                                  rho.q / r.norm};
        r.entropy = entanglement_entropy(unit);
    }
    r.leak = leakage(s, margin);
    r.leak_flag = r.leak > threshold;
    return r;
}

Trajectory evolve(const SpinorState& initial, const ModelParams& params,
                  int n_steps, Backend backend, const EvolveOptions& opts) {
    if (n_steps < 0) throw std::invalid_argument("n_steps must be >= 0");
    if (initial.k_max != params.k_max)
        throw std::invalid_argument("state lattice does not match params");

    StepOperator op(params, backend);
    const int margin =
        opts.leakage_margin.value_or(std::min(op.bessel_band(), params.k_max - 1));

    Trajectory traj;
    traj.params = params;
    traj.backend = backend;

    // Support width of the initial state, for the capacity rule.
    int lo = params.k_max, hi = -params.k_max;
    for (int k = -params.k_max; k <= params.k_max; ++k) {
        if (std::norm(initial.at_a(k)) + std::norm(initial.at_b(k)) > 0.0) {
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
    }
    const int width = hi >= lo ? hi - lo + 1 : 0;
    traj.capacity_warning =
        params.k_max < required_k_max(width, n_steps, params.kappa);

    traj.steps.reserve(n_steps + 1);
    SpinorState s = initial;
    traj.steps.push_back(observe(s, 0, margin, opts.leakage_threshold));
    for (int n = 1; n <= n_steps; ++n) {
        op.apply(s);
        traj.steps.push_back(observe(s, n, margin, opts.leakage_threshold));
        if (traj.steps.back().leak_flag) traj.truncation_compromised = true;
    }
    if (opts.keep_final_state) traj.final_state = std::move(s);
    return traj;
}

}  // namespace qkr

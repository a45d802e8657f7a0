#ifndef QKR_EVOLVE_HPP
#define QKR_EVOLVE_HPP

#include <optional>
#include <vector>

#include "qkr/closed_form.hpp"
#include "qkr/state.hpp"
#include "qkr/step.hpp"

namespace qkr {

struct StepRecord {
    int n = 0;
    double m1 = 0.0;
    double m2 = 0.0;
    double variance = 0.0;
    double p_g = 0.0;    // sum |a_k|^2 (conventional P_g label)
    double p_e = 0.0;    // sum |b_k|^2
    cplx q{0.0, 0.0};    // sum a_k b_k^*
    double entropy = 0.0;
    double norm = 0.0;
    double leak = 0.0;
    bool leak_flag = false;
};

struct EvolveOptions {
    double leakage_threshold = 1e-10;
    std::optional<int> leakage_margin;  // default: the operator's band
    bool keep_final_state = false;
};

struct Trajectory {
    std::vector<StepRecord> steps;  // consecutive n starting at 0
    ModelParams params;
    Backend backend = Backend::BesselMatrix;
    bool truncation_compromised = false;
    bool capacity_warning = false;
    std::optional<SpinorState> final_state;
};

// Lattice capacity needed for n steps at kick kappa from support width w;
// ballistic spreading rate is set by the Bessel turning point at order
// close to the argument.
int required_k_max(int support_width, int n_steps, double kappa);

StepRecord observe(const SpinorState& s, int n, int margin, double threshold);

// Iterate the Floquet step n_steps times, recording observables at every
// step including the initial state.  Leakage above the threshold flags
// the trajectory rather than aborting.
Trajectory evolve(const SpinorState& initial, const ModelParams& params,
                  int n_steps, Backend backend,
                  const EvolveOptions& opts = {});

}  // namespace qkr

#endif

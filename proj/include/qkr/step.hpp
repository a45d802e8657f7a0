#ifndef QKR_STEP_HPP
#define QKR_STEP_HPP

#include <array>
#include <memory>
#include <vector>

#include "qkr/state.hpp"

namespace qkr {

enum class Backend { BesselMatrix, SplitStep };

// 2x2 unitary exp(i kappa cos(theta) sigma_x), row-major.
std::array<cplx, 4> kick_rotation(double theta, double kappa);

// One Floquet period, equation-of-motion order: kick first, then the
// momentum-diagonal free phases (e^{-i delta_tilde} on the a row,
// e^{-i (k+beta)^2 tau} on both rows).
class StepOperator {
public:
    StepOperator(const ModelParams& params, Backend backend);
    ~StepOperator();
    StepOperator(StepOperator&&) noexcept;
    StepOperator& operator=(StepOperator&&) noexcept;
    StepOperator(const StepOperator&) = delete;
    StepOperator& operator=(const StepOperator&) = delete;

    const ModelParams& params() const { return params_; }
    Backend backend() const { return backend_; }
    int bessel_band() const { return band_; }
    int theta_grid_size() const;  // split-step only

    // Applies one period in place.  Throws on lattice mismatch.
    void apply(SpinorState& s) const;

private:
    struct SplitStepPlan;

    ModelParams params_;
    Backend backend_;
    int band_;
    std::vector<cplx> weights_;   // i^m J_m(kappa), m in [-band, band]
    std::vector<cplx> phase_a_;   // e^{-i delta} e^{-i(k+beta)^2 tau}
    std::vector<cplx> phase_b_;   // e^{-i(k+beta)^2 tau}
    mutable std::vector<cplx> scratch_a_, scratch_b_;
    std::unique_ptr<SplitStepPlan> plan_;  // split-step only
};

// Convenience wrappers matching the backend names.
SpinorState step_bessel(const SpinorState& s, const StepOperator& op);
SpinorState step_splitstep(const SpinorState& s, const StepOperator& op);

}  // namespace qkr

#endif

#include "qkr/step.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

#include "qkr/bessel.hpp"
#include "qkr/kernels.hpp"

namespace qkr {

std::array<cplx, 4> kick_rotation(double theta, double kappa) {
    const double arg = kappa * std::cos(theta);
    const double c = std::cos(arg);
    const cplx is{0.0, std::sin(arg)};
    return {cplx{c, 0.0}, is, is, cplx{c, 0.0}};
}

struct StepOperator::SplitStepPlan {
    int n = 0;
    fftw_complex* ta = nullptr;
    fftw_complex* tb = nullptr;
    fftw_plan fwd_a{}, bwd_a{}, fwd_b{}, bwd_b{};
    std::vector<double> kick_cos;  // cos(kappa cos theta_j)
    std::vector<double> kick_sin;  // sin(kappa cos theta_j)

    SplitStepPlan(int size, double kappa) : n(size) {
        ta = fftw_alloc_complex(n);
        tb = fftw_alloc_complex(n);
        fwd_a = fftw_plan_dft_1d(n, ta, ta, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_a = fftw_plan_dft_1d(n, ta, ta, FFTW_BACKWARD, FFTW_ESTIMATE);
        fwd_b = fftw_plan_dft_1d(n, tb, tb, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_b = fftw_plan_dft_1d(n, tb, tb, FFTW_BACKWARD, FFTW_ESTIMATE);
        kick_cos.resize(n);
        kick_sin.resize(n);
        for (int j = 0; j < n; ++j) {
            const double theta = -M_PI + 2.0 * M_PI * j / n;
            const double arg = kappa * std::cos(theta);
            kick_cos[j] = std::cos(arg);
            kick_sin[j] = std::sin(arg);
        }
    }
    ~SplitStepPlan() {
        fftw_destroy_plan(fwd_a);
        fftw_destroy_plan(bwd_a);
        fftw_destroy_plan(fwd_b);
        fftw_destroy_plan(bwd_b);
        fftw_free(ta);
        fftw_free(tb);
    }
};

StepOperator::StepOperator(const ModelParams& params, Backend backend)
    : params_(params), backend_(backend) {
    if (params.k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    band_ = qkr::bessel_band(params.kappa);
    const int n = 2 * params.k_max + 1;

    std::vector<double> jrow = bessel_row(-band_, band_, params.kappa);
    weights_.resize(2 * band_ + 1);
    for (int m = -band_; m <= band_; ++m) {
        static const cplx ip[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        weights_[m + band_] = ip[((m % 4) + 4) % 4] * jrow[m + band_];
    }

    phase_a_.resize(n);
    phase_b_.resize(n);
    const cplx det_phase = std::polar(1.0, -params.delta_tilde);
    for (int i = 0; i < n; ++i) {
        const double kb = (i - params.k_max) + params.beta;
        const cplx free = std::polar(1.0, -kb * kb * params.tau);
        phase_b_[i] = free;
        phase_a_[i] = det_phase * free;
    }
    scratch_a_.resize(n);
    scratch_b_.resize(n);

    if (backend_ == Backend::SplitStep)
        plan_ = std::make_unique<SplitStepPlan>(n, params.kappa);
}

StepOperator::~StepOperator() = default;
StepOperator::StepOperator(StepOperator&&) noexcept = default;
StepOperator& StepOperator::operator=(StepOperator&&) noexcept = default;

int StepOperator::theta_grid_size() const {
    if (backend_ != Backend::SplitStep)
        throw std::logic_error("theta grid only exists for the split-step backend");
    return plan_->n;
}

void StepOperator::apply(SpinorState& s) const {
    if (s.k_max != params_.k_max)
        throw std::invalid_argument("state lattice does not match operator lattice");
    const int n = s.size();
    const auto& impl = kernels::active();

    if (backend_ == Backend::BesselMatrix) {
        impl.kick_conv(s.a.data(), s.b.data(), scratch_a_.data(),
                       scratch_b_.data(), weights_.data(), band_, n);
        impl.phase_mul(scratch_a_.data(), scratch_b_.data(), phase_a_.data(),
                       phase_b_.data(), n);
        s.a.swap(scratch_a_);
        s.b.swap(scratch_b_);
        return;
    }

    // Split-step: spectral transform to the angle grid, pointwise kick
    // rotation, transform back, then the momentum-diagonal phases.
    // theta_j = -pi + 2 pi j / n, so e^{ik theta_j} = (-1)^k e^{2 pi i kj/n}.
    SplitStepPlan& p = *plan_;
    const int kmax = params_.k_max;
    for (int k = -kmax; k <= kmax; ++k) {
        const int f = k >= 0 ? k : k + n;
        const double sgn = (k & 1) ? -1.0 : 1.0;
        const cplx va = sgn * s.at_a(k);
        const cplx vb = sgn * s.at_b(k);
        p.ta[f][0] = va.real();
        p.ta[f][1] = va.imag();
        p.tb[f][0] = vb.real();
        p.tb[f][1] = vb.imag();
    }
    fftw_execute(p.bwd_a);
    fftw_execute(p.bwd_b);
    for (int j = 0; j < n; ++j) {
        const cplx u{p.ta[j][0], p.ta[j][1]};
        const cplx v{p.tb[j][0], p.tb[j][1]};
        const double c = p.kick_cos[j];
        const cplx is{0.0, p.kick_sin[j]};
        const cplx nu = c * u + is * v;
        const cplx nv = is * u + c * v;
        p.ta[j][0] = nu.real();
        p.ta[j][1] = nu.imag();
        p.tb[j][0] = nv.real();
        p.tb[j][1] = nv.imag();
    }
    fftw_execute(p.fwd_a);
    fftw_execute(p.fwd_b);
    const double inv_n = 1.0 / n;
    for (int k = -kmax; k <= kmax; ++k) {
        const int f = k >= 0 ? k : k + n;
        const double sgn = ((k & 1) ? -1.0 : 1.0) * inv_n;
        s.at_a(k) = sgn * cplx{p.ta[f][0], p.ta[f][1]};
        s.at_b(k) = sgn * cplx{p.tb[f][0], p.tb[f][1]};
    }
    impl.phase_mul(s.a.data(), s.b.data(), phase_a_.data(), phase_b_.data(), n);
}

SpinorState step_bessel(const SpinorState& s, const StepOperator& op) {
    if (op.backend() != Backend::BesselMatrix)
        throw std::invalid_argument("step_bessel requires a bessel-matrix operator");
    SpinorState out = s;
    op.apply(out);
    return out;
}

SpinorState step_splitstep(const SpinorState& s, const StepOperator& op) {
    if (op.backend() != Backend::SplitStep)
        throw std::invalid_argument("step_splitstep requires a split-step operator");
    SpinorState out = s;
    op.apply(out);
    return out;
}

}  // namespace qkr

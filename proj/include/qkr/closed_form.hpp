#ifndef QKR_CLOSED_FORM_HPP
#define QKR_CLOSED_FORM_HPP

#include <stdexcept>
#include <utility>

#include "qkr/state.hpp"

namespace qkr {

// Raised when a computed quantity violates a structural bound by more
// than rounding can explain (distinct CLI exit code).
struct numeric_integrity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 2x2 reduced density matrix [[P_g, Q], [Q*, P_e]] of the chirality
// degree of freedom.  Naming caveat: the conventional label P_g is kept
// for the |a_k|^2 sum even though a pairs with the excited component.
struct ReducedDensityMatrix {
    double p_g = 1.0;
    double p_e = 0.0;
    cplx q{0.0, 0.0};

    std::pair<double, double> eigenvalues() const;  // {lambda+, lambda-}
};

// Resonance here always means tau = 2*pi, beta = 0, delta_tilde = 2*m*pi;
// antiresonance swaps the last condition for delta_tilde = (2m+1)*pi.
// Checks use tolerance 1e-12; closed-form operations refuse outside it.
bool is_resonant(const ModelParams& p, double tol = 1e-12);
bool is_antiresonant(const ModelParams& p, double tol = 1e-12);
void require_resonant(const ModelParams& p);
void require_antiresonant(const ModelParams& p);

// Wave function after n resonant periods: amplitudes mix through
// i^{j-k} J_{j-k}(n kappa), chirality-diagonal for even j-k and
// chirality-swapping for odd j-k.
SpinorState resonant_state(const SpinorState& initial, double kappa, int n);

// Antiresonant evolution: even n returns the initial state, odd n one
// application of the (antiresonant) Floquet step.
SpinorState antiresonant_state(const SpinorState& initial, double kappa, int n);

// Specialization of resonant_state to a k=0 localized Bloch state.
SpinorState localized_resonant_state(const BlochInit& init, double kappa,
                                     int n, int k_max);

// First and second moments after n resonant periods, evaluated on the
// initial amplitudes (no iteration).
std::pair<double, double> analytic_moments(const SpinorState& initial,
                                           double kappa, int n);

// Closed-form occupations and coherence for a localized start:
// P_g = (1/2)[1 + J_0(2 n kappa) cos(gamma)], etc.
ReducedDensityMatrix closed_form_occupations(const BlochInit& init,
                                             double kappa, int n);

ReducedDensityMatrix reduced_density(const SpinorState& s);

// Von Neumann entropy in base 2; eigenvalues in [-1e-12, 0) clamp to 0,
// anything further outside [0, 1] is a numeric_integrity_error.
double entanglement_entropy(const ReducedDensityMatrix& rho);

// n -> infinity limit of the entropy for a localized start.
double asymptotic_entropy(const BlochInit& init);

}  // namespace qkr

#endif

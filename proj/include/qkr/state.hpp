#ifndef QKR_STATE_HPP
#define QKR_STATE_HPP

#include <complex>
#include <stdexcept>
#include <vector>

namespace qkr {

using cplx = std::complex<double>;

// Dimensionless parameter set fixing one Floquet period.
// kappa = K/hbar, tau = k_L^2 hbar T / 2M, delta_tilde = T*Delta.
struct ModelParams {
    double kappa = 1.0;
    double tau = 0.0;
    double delta_tilde = 0.0;
    double beta = 0.0;   // quasimomentum, reduced into [-1/2, 1/2)
    int k_max = 1;       // momentum index runs over [-k_max, k_max]
};

// Bloch-sphere angles for a momentum-localized initial chirality state.
struct BlochInit {
    double gamma = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2*pi]
};

// Two-component amplitudes on the truncated momentum lattice.
// a pairs with |e> and b with |g>.  Note: the sums over |a_k|^2 are
// reported downstream under the conventional name P_g even though a is
// the excited component; see reduced_density().
struct SpinorState {
    std::vector<cplx> a;
    std::vector<cplx> b;
    int k_max = 0;

    SpinorState() = default;
    explicit SpinorState(int kmax)
        : a(2 * kmax + 1), b(2 * kmax + 1), k_max(kmax) {
        if (kmax < 1) throw std::invalid_argument("k_max must be >= 1");
    }

    int size() const { return 2 * k_max + 1; }
    // momentum k <-> array index k + k_max
    int idx(int k) const { return k + k_max; }
    cplx& at_a(int k) { return a[idx(k)]; }
    cplx& at_b(int k) { return b[idx(k)]; }
    cplx at_a(int k) const { return a[idx(k)]; }
    cplx at_b(int k) const { return b[idx(k)]; }
};

struct Moments {
    double m1 = 0.0;
    double m2 = 0.0;
    double variance = 0.0;
};

// Reduce beta into [-1/2, 1/2) modulo 1.
double reduce_beta(double beta);

// Build the dimensionless parameter set from physical inputs.
// Throws std::invalid_argument for non-positive M, T, hbar or zero k_L.
// Negative kick strength is stored as |kappa|: kappa -> -kappa is a
// chirality-basis sign conjugation, so the physics is unchanged.
ModelParams make_params(double kick, double hbar, double wavevector,
                        double mass, double period, double detuning,
                        double quasimomentum, int k_max);

// Momentum-localized state at k=0 with chirality (gamma, phi).
SpinorState bloch_state(const BlochInit& init, int k_max);

// P_k = |a_k|^2 + |b_k|^2, indexed like the state arrays.
std::vector<double> probability_distribution(const SpinorState& s);

Moments moments(const std::vector<double>& p, int k_max);
Moments moments(const SpinorState& s);

double total_norm(const SpinorState& s);

// Probability mass in the outer `margin` sites at each lattice edge.
double leakage(const SpinorState& s, int margin);

}  // namespace qkr

#endif

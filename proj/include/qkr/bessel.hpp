#ifndef QKR_BESSEL_HPP
#define QKR_BESSEL_HPP

#include <complex>
#include <utility>
#include <vector>

namespace qkr {

// Integer-order Bessel functions of the first kind, plus numerical
// oracles for the sum identities the evolution kernels rely on.

enum class BesselMethod {
    Auto,               // pick per (n, x)
    BackwardRecurrence, // Miller recurrence, Neumann-sum normalized
    AsymptoticLargeX,   // Hankel expansion, valid for x >> n^2
};

// J_n(x) for integer n, any sign of n and x.  |x| < 1e8 (beyond which
// argument reduction of the asymptotic phase degrades); larger x throws
// std::domain_error.
double bessel_j(int n, double x, BesselMethod method = BesselMethod::Auto);

// J_n(x) for n in [n_min, n_max], one recurrence sweep.
std::vector<double> bessel_row(int n_min, int n_max, double x);

// Smallest half-bandwidth m such that |J_m'(kappa)| < eps for all m' > m.
int bessel_band(double kappa, double eps = 1e-16);

// |sum_{k1} J_{k2-k1}(kappa) J_{k1-k0}(kappa) - J_mu(2 kappa)|,
// mu = k2 - k0; the sum is translation invariant so only mu matters.
double addition_identity_residual(double kappa, int mu, int band);

// Residuals of the parity-restricted composition sums:
//  first:  sum restricted to k1-k0 even  vs  (1/2)[J_mu(2k) + delta_{k2 k0}]
//  second: additionally k2-k1 even       vs  (1/2) delta_{mu even} [same]
std::pair<double, double> parity_sum_residuals(double kappa, int k0, int k2,
                                               int band);

// Closed forms of the moment sums
//   I1_{jl} = i^{l-j} sum_k k   J_{k-j}(kappa) J_{k-l}(kappa)
//   I2_{jl} = i^{l-j} sum_k k^2 J_{k-j}(kappa) J_{k-l}(kappa)
// (the off-diagonal sign of I1 follows the defining sum, which the
// printed closed form contradicts).
std::complex<double> moment_sum_i1(int j, int l, double kappa);
std::complex<double> moment_sum_i2(int j, int l, double kappa);

// The defining sums, evaluated by truncation over |k| <= band.
std::complex<double> moment_sum_i1_direct(int j, int l, double kappa, int band);
std::complex<double> moment_sum_i2_direct(int j, int l, double kappa, int band);

}  // namespace qkr

#endif

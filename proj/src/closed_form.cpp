#include "qkr/closed_form.hpp"

#include <cmath>

#include "qkr/bessel.hpp"

namespace qkr {

namespace {

const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
cplx ipow(int m) { return kIPow[((m % 4) + 4) % 4]; }

// Distance of x from the nearest multiple of 2*pi.
double mod_2pi_dist(double x) {
    double r = std::remainder(x, 2.0 * M_PI);
    return std::abs(r);
}

}  // namespace

bool is_resonant(const ModelParams& p, double tol) {
    return std::abs(p.tau - 2.0 * M_PI) <= tol && std::abs(p.beta) <= tol &&
           mod_2pi_dist(p.delta_tilde) <= tol;
}

bool is_antiresonant(const ModelParams& p, double tol) {
    return std::abs(p.tau - 2.0 * M_PI) <= tol && std::abs(p.beta) <= tol &&
           mod_2pi_dist(p.delta_tilde - M_PI) <= tol;
}

void require_resonant(const ModelParams& p) {
    if (!is_resonant(p))
        throw std::invalid_argument(
            "closed form requires tau = 2*pi, beta = 0, delta_tilde = 2*m*pi");
}

void require_antiresonant(const ModelParams& p) {
    if (!is_antiresonant(p))
        throw std::invalid_argument(
            "closed form requires tau = 2*pi, beta = 0, delta_tilde = (2m+1)*pi");
}

SpinorState resonant_state(const SpinorState& initial, double kappa, int n) {
    if (n < 0) throw std::invalid_argument("step count must be >= 0");
    const int kmax = initial.k_max;
    SpinorState out(kmax);
    const double x = n * kappa;
    const int band = bessel_band(x);
    std::vector<double> jrow = bessel_row(-band, band, x);
    for (int k = -kmax; k <= kmax; ++k) {
        cplx sa{0, 0}, sb{0, 0};
        const int j_lo = std::max(-kmax, k - band);
        const int j_hi = std::min(kmax, k + band);
        for (int j = j_lo; j <= j_hi; ++j) {
            const cplx w = ipow(j - k) * jrow[j - k + band];
            if ((j - k) & 1) {
                sa += w * initial.at_b(j);
                sb += w * initial.at_a(j);
            } else {
                sa += w * initial.at_a(j);
                sb += w * initial.at_b(j);
            }
        }
        out.at_a(k) = sa;
        out.at_b(k) = sb;
    }
    return out;
}

SpinorState antiresonant_state(const SpinorState& initial, double kappa,
                               int n) {
    if (n < 0) throw std::invalid_argument("step count must be >= 0");
    if (n % 2 == 0) return initial;
    // One period with delta_tilde = pi: the kick mixing of one resonant
    // step plus the factor e^{-i pi} = -1 on the a row.
    const int kmax = initial.k_max;
    SpinorState out(kmax);
    const int band = bessel_band(kappa);
    std::vector<double> jrow = bessel_row(-band, band, kappa);
    for (int k = -kmax; k <= kmax; ++k) {
        cplx sa{0, 0}, sb{0, 0};
        const int j_lo = std::max(-kmax, k - band);
        const int j_hi = std::min(kmax, k + band);
        for (int j = j_lo; j <= j_hi; ++j) {
            const cplx w = ipow(k - j) * jrow[k - j + band];
            if ((k - j) & 1) {
                sa += w * initial.at_b(j);
                sb += w * initial.at_a(j);
            } else {
                sa += w * initial.at_a(j);
                sb += w * initial.at_b(j);
            }
        }
        out.at_a(k) = -sa;
        out.at_b(k) = sb;
    }
    return out;
}

SpinorState localized_resonant_state(const BlochInit& init, double kappa,
                                     int n, int k_max) {
    if (n < 0) throw std::invalid_argument("step count must be >= 0");
    SpinorState out(k_max);
    const cplx up = std::cos(init.gamma / 2.0);
    const cplx dn = std::polar(std::sin(init.gamma / 2.0), init.phi);
    const double x = n * kappa;
    const int band = std::min(bessel_band(x), k_max);
    std::vector<double> jrow = bessel_row(-band, band, x);
    for (int k = -band; k <= band; ++k) {
        const cplx w = ipow(k) * jrow[k + band];
        if (k & 1) {
            out.at_a(k) = w * dn;
            out.at_b(k) = w * up;
        } else {
            out.at_a(k) = w * up;
            out.at_b(k) = w * dn;
        }
    }
    return out;
}

std::pair<double, double> analytic_moments(const SpinorState& initial,
                                           double kappa, int n) {
    const int kmax = initial.k_max;
    Moments m0 = moments(initial);
    const double chi = kappa * n;

    // Nearest-neighbor and next-nearest correlations of the initial
    // amplitudes, obtained from the resonant solution and the Bessel
    // moment sums; these forms match the iterated map to machine
    // precision.
    double drift = 0.0;     // sum Im[a_j b_{j-1}* - a_j b_{j+1}*]
    double corr2 = 0.0;     // Re sum [a_j a_{j+2}* + b_j b_{j+2}*]
    double odd = 0.0;       // sum (2j+1) Im[a_j b_{j+1}* + b_j a_{j+1}*]
    for (int j = -kmax; j <= kmax; ++j) {
        const cplx aj = initial.at_a(j);
        const cplx bj = initial.at_b(j);
        if (j + 1 <= kmax) {
            const cplx bj1 = initial.at_b(j + 1);
            const cplx aj1 = initial.at_a(j + 1);
            drift -= std::imag(aj * std::conj(bj1));
            odd += (2.0 * j + 1.0) *
                   std::imag(aj * std::conj(bj1) + bj * std::conj(aj1));
        }
        if (j - 1 >= -kmax) drift += std::imag(aj * std::conj(initial.at_b(j - 1)));
        if (j + 2 <= kmax)
            corr2 += std::real(aj * std::conj(initial.at_a(j + 2)) +
                               bj * std::conj(initial.at_b(j + 2)));
    }
    const double m1 = m0.m1 + chi * drift;
    const double m2 = m0.m2 + 0.5 * chi * chi * (1.0 - corr2) - chi * odd;
    return {m1, m2};
}

ReducedDensityMatrix closed_form_occupations(const BlochInit& init,
                                             double kappa, int n) {
    const double j0 = bessel_j(0, 2.0 * n * kappa);
    const double cg = std::cos(init.gamma);
    ReducedDensityMatrix rho;
    rho.p_g = 0.5 * (1.0 + j0 * cg);
    rho.p_e = 0.5 * (1.0 - j0 * cg);
    rho.q = 0.5 * std::sin(init.gamma) *
            cplx{std::cos(init.phi), -std::sin(init.phi) * j0};
    return rho;
}

ReducedDensityMatrix reduced_density(const SpinorState& s) {
    ReducedDensityMatrix rho;
    rho.p_g = 0.0;
    for (int i = 0; i < s.size(); ++i) {
        rho.p_g += std::norm(s.a[i]);
        rho.p_e += std::norm(s.b[i]);
        rho.q += s.a[i] * std::conj(s.b[i]);
    }
    return rho;
}

std::pair<double, double> ReducedDensityMatrix::eigenvalues() const {
    const double det = p_g * p_e - std::norm(q);
    const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * det));
    return {0.5 * (1.0 + disc), 0.5 * (1.0 - disc)};
}

namespace {
double entropy_term(double lambda) {
    if (lambda < -1e-12 || lambda > 1.0 + 1e-12)
        throw numeric_integrity_error("density eigenvalue outside [0, 1]");
    if (lambda <= 0.0) return 0.0;  // 0 log 0 = 0, clamped rounding included
    return -lambda * std::log2(lambda);
}
}  // namespace

double entanglement_entropy(const ReducedDensityMatrix& rho) {
    auto [lp, lm] = rho.eigenvalues();
    return entropy_term(lp) + entropy_term(lm);
}

double asymptotic_entropy(const BlochInit& init) {
    const double c = std::cos(init.phi) * std::sin(init.gamma);
    ReducedDensityMatrix rho;
    rho.p_g = 0.5 * (1.0 + c);
    rho.p_e = 0.5 * (1.0 - c);
    rho.q = 0.0;
    return entanglement_entropy(rho);
}

}  // namespace qkr

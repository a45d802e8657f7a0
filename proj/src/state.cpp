#include "qkr/state.hpp"

#include <cmath>

namespace qkr {

double reduce_beta(double beta) {
    double b = beta - std::floor(beta + 0.5);
    if (b >= 0.5) b -= 1.0;  // floor rounding at the upper boundary
    return b;
}

ModelParams make_params(double kick, double hbar, double wavevector,
                        double mass, double period, double detuning,
                        double quasimomentum, int k_max) {
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
    if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
    if (wavevector == 0.0) throw std::invalid_argument("wavevector must be nonzero");
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");

    ModelParams p;
    p.kappa = std::abs(kick / hbar);
    p.tau = wavevector * wavevector * hbar * period / (2.0 * mass);
    p.delta_tilde = period * detuning;
    p.beta = reduce_beta(quasimomentum);
    p.k_max = k_max;
    return p;
}

SpinorState bloch_state(const BlochInit& init, int k_max) {
    if (init.gamma < 0.0 || init.gamma > M_PI)
        throw std::invalid_argument("gamma must lie in [0, pi]");
    if (init.phi < 0.0 || init.phi > 2.0 * M_PI)
        throw std::invalid_argument("phi must lie in [0, 2*pi]");
    SpinorState s(k_max);
    s.at_a(0) = std::cos(init.gamma / 2.0);
    s.at_b(0) = std::polar(std::sin(init.gamma / 2.0), init.phi);
    return s;
}

std::vector<double> probability_distribution(const SpinorState& s) {
    std::vector<double> p(s.size());
    for (int i = 0; i < s.size(); ++i)
        p[i] = std::norm(s.a[i]) + std::norm(s.b[i]);
    return p;
}

Moments moments(const std::vector<double>& p, int k_max) {
    Moments m;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        double k = static_cast<double>(i - k_max);
        m.m1 += k * p[i];
        m.m2 += k * k * p[i];
    }
    m.variance = m.m2 - m.m1 * m.m1;
    return m;
}

Moments moments(const SpinorState& s) {
    return moments(probability_distribution(s), s.k_max);
}

double total_norm(const SpinorState& s) {
    double n = 0.0;
    for (int i = 0; i < s.size(); ++i)
        n += std::norm(s.a[i]) + std::norm(s.b[i]);
    return n;
}

double leakage(const SpinorState& s, int margin) {
    if (margin < 0 || margin >= s.k_max)
        throw std::invalid_argument("leakage margin must lie in [0, k_max)");
    double mass = 0.0;
    const int n = s.size();
    for (int i = 0; i < margin; ++i) {
        mass += std::norm(s.a[i]) + std::norm(s.b[i]);
        mass += std::norm(s.a[n - 1 - i]) + std::norm(s.b[n - 1 - i]);
    }
    return mass;
}

}  // namespace qkr

#include "qkr/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qkr {
namespace {

constexpr double kMaxArgument = 1e8;
constexpr double kAsymptoticCrossover = 2000.0;

// i^m for integer m (any sign).
std::complex<double> ipow(int m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// J_0..J_nmax for x > 0 by backward (Miller) recurrence with
// Neumann-sum normalization  J_0 + 2 sum_m J_{2m} = 1.
std::vector<double> miller_row(int nmax, double x) {
    // Start far enough past the turning point that the contamination by
    // the dominant solution has decayed below double precision.  The
    // Airy-region width scales like x^{1/3}.
    int start = std::max(nmax, static_cast<int>(std::ceil(x))) +
                std::max(50, static_cast<int>(16.0 * std::cbrt(x)));
    std::vector<double> f(start + 2, 0.0);
    f[start + 1] = 0.0;
    f[start] = 1e-280;
    double sum = 0.0;  // Neumann sum, accumulated on the fly
    if (start % 2 == 0) sum += 2.0 * f[start];
    for (int m = start; m >= 1; --m) {
        f[m - 1] = (2.0 * m / x) * f[m] - f[m + 1];
        if ((m - 1) % 2 == 0 && m - 1 > 0) sum += 2.0 * f[m - 1];
        if (std::abs(f[m - 1]) > 1e250) {
            const double scale = 1e-250;
            for (int i = m - 1; i <= start + 1; ++i) f[i] *= scale;
            sum *= scale;
        }
    }
    sum += f[0];
    f.resize(nmax + 1);
    for (double& v : f) v /= sum;
    return f;
}

// Hankel large-argument expansion; requires x >> n^2.
double hankel_asymptotic(int n, double x) {
    const double mu = 4.0 * static_cast<double>(n) * n;
    double term = 1.0;
    double p = 1.0, q = 0.0;
    for (int k = 1; k < 64; ++k) {
        double odd = 2.0 * k - 1.0;
        double next = term * (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(term) && k > 2) break;  // divergence onset
        term = next;
        switch (k % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            case 0: p += term; break;
        }
        if (std::abs(term) < 1e-18) break;
    }
    const double alpha = (0.5 * n + 0.25) * M_PI;
    const double chi_cos = std::cos(x) * std::cos(alpha) + std::sin(x) * std::sin(alpha);
    const double chi_sin = std::sin(x) * std::cos(alpha) - std::cos(x) * std::sin(alpha);
    return std::sqrt(2.0 / (M_PI * x)) * (chi_cos * p - chi_sin * q);
}

void check_argument(double x) {
    if (!(std::abs(x) < kMaxArgument))
        throw std::domain_error("bessel_j: |x| must be < 1e8");
}

}  // namespace

double bessel_j(int n, double x, BesselMethod method) {
    check_argument(x);
    double sign = 1.0;
    if (x < 0.0) {  // J_n(-x) = (-1)^n J_n(x)
        x = -x;
        if (n % 2 != 0) sign = -sign;
    }
    if (n < 0) {  // J_{-n}(x) = (-1)^n J_n(x)
        if (n % 2 != 0) sign = -sign;
        n = -n;
    }
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;

    bool asym;
    switch (method) {
        case BesselMethod::BackwardRecurrence: asym = false; break;
        case BesselMethod::AsymptoticLargeX: asym = true; break;
        default: asym = (x > kAsymptoticCrossover && 4.0 * double(n) * n < 0.5 * x);
    }
    if (asym) return sign * hankel_asymptotic(n, x);
    return sign * miller_row(n, x)[n];
}

std::vector<double> bessel_row(int n_min, int n_max, double x) {
    if (n_min > n_max) throw std::invalid_argument("bessel_row: empty range");
    check_argument(x);
    double xs = 1.0;
    double xa = x;
    if (xa < 0.0) { xa = -xa; xs = -1.0; }  // odd orders flip sign below

    const int top = std::max({std::abs(n_min), std::abs(n_max), 0});
    std::vector<double> out(n_max - n_min + 1);
    if (xa == 0.0) {
        for (int n = n_min; n <= n_max; ++n) out[n - n_min] = (n == 0) ? 1.0 : 0.0;
        return out;
    }
    std::vector<double> pos = miller_row(top, xa);
    for (int n = n_min; n <= n_max; ++n) {
        int m = std::abs(n);
        double v = pos[m];
        if (n < 0 && m % 2 != 0) v = -v;   // parity in the order
        if (m % 2 != 0 && xs < 0.0) v = -v;  // parity in the argument
        out[n - n_min] = v;
    }
    return out;
}

int bessel_band(double kappa, double eps) {
    kappa = std::abs(kappa);
    if (kappa == 0.0) return 1;
    int top = static_cast<int>(std::ceil(
        kappa + std::max(20.0, 8.0 * std::cbrt(kappa))));
    for (;;) {
        std::vector<double> row = bessel_row(0, top, kappa);
        // accept only if the tail is safely below eps, else widen and retry
        bool tail_dead = true;
        for (int m = top - 3; m <= top; ++m)
            tail_dead = tail_dead && std::abs(row[m]) < eps;
        if (tail_dead) {
            int band = 1;
            for (int m = 0; m <= top; ++m)
                if (std::abs(row[m]) >= eps) band = std::max(band, m + 1);
            return band;
        }
        top += std::max(16, top / 8);
    }
}

double addition_identity_residual(double kappa, int mu, int band) {
    std::vector<double> row = bessel_row(-band - std::abs(mu), band + std::abs(mu), kappa);
    auto j = [&](int m) { return row[m + band + std::abs(mu)]; };
    double s = 0.0;
    for (int m = -band; m <= band; ++m) s += j(mu - m) * j(m);
    return std::abs(s - bessel_j(mu, 2.0 * kappa));
}

std::pair<double, double> parity_sum_residuals(double kappa, int k0, int k2,
                                               int band) {
    const int mu = k2 - k0;
    const int reach = band + std::abs(mu) + std::abs(k0) + std::abs(k2);
    std::vector<double> row = bessel_row(-reach, reach, kappa);
    auto j = [&](int m) { return row[m + reach]; };
    double s_even = 0.0, s_both = 0.0;
    for (int k1 = k0 - band; k1 <= k0 + band; ++k1) {
        if ((k1 - k0) % 2 != 0) continue;
        double t = j(k2 - k1) * j(k1 - k0);
        s_even += t;
        if ((k2 - k1) % 2 == 0) s_both += t;
    }
    const double delta = (k2 == k0) ? 1.0 : 0.0;
    const double rhs = 0.5 * (bessel_j(mu, 2.0 * kappa) + delta);
    const double rhs_both = (mu % 2 == 0) ? rhs : 0.0;
    return {std::abs(s_even - rhs), std::abs(s_both - rhs_both)};
}

std::complex<double> moment_sum_i1(int j, int l, double kappa) {
    std::complex<double> v = 0.0;
    if (j == l) v += static_cast<double>(j);
    if (l == j + 1) v += std::complex<double>(0.0, 0.5 * kappa);
    if (l == j - 1) v -= std::complex<double>(0.0, 0.5 * kappa);
    return v;
}

std::complex<double> moment_sum_i2(int j, int l, double kappa) {
    std::complex<double> v = 0.0;
    const double k2 = kappa * kappa;
    if (j == l) v += 0.5 * k2 + static_cast<double>(l) * l;
    if (l == j + 2 || l == j - 2) v -= 0.25 * k2;
    if (l == j + 1) v += std::complex<double>(0.0, kappa * (0.5 + j));
    if (l == j - 1) v += std::complex<double>(0.0, kappa * (0.5 - j));
    return v;
}

namespace {
std::complex<double> moment_sum_direct(int j, int l, double kappa, int band,
                                       int power) {
    const int reach = band + std::abs(j) + std::abs(l);
    std::vector<double> row = bessel_row(-reach - 1, reach + 1, kappa);
    auto jj = [&](int m) { return row[m + reach + 1]; };
    double s = 0.0;
    for (int k = -band; k <= band; ++k) {
        double w = (power == 1) ? k : static_cast<double>(k) * k;
        s += w * jj(k - j) * jj(k - l);
    }
    return ipow(l - j) * s;
}
}  // namespace

std::complex<double> moment_sum_i1_direct(int j, int l, double kappa, int band) {
    return moment_sum_direct(j, l, kappa, band, 1);
}

std::complex<double> moment_sum_i2_direct(int j, int l, double kappa, int band) {
    return moment_sum_direct(j, l, kappa, band, 2);
}

}  // namespace qkr

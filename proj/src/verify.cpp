#include "qkr/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qkr/bessel.hpp"
#include "qkr/closed_form.hpp"
#include "qkr/evolve.hpp"
#include "qkr/kernels.hpp"
#include "qkr/state.hpp"
#include "qkr/step.hpp"

namespace qkr {
namespace {

using Rng = std::mt19937_64;

SpinorState random_localized_state(Rng& rng, int k_max, int support) {
    std::normal_distribution<double> gauss;
    SpinorState s(k_max);
    for (int k = -support; k <= support; ++k) {
        s.at_a(k) = cplx{gauss(rng), gauss(rng)};
        s.at_b(k) = cplx{gauss(rng), gauss(rng)};
    }
    const double n = std::sqrt(total_norm(s));
    for (auto& v : s.a) v /= n;
    for (auto& v : s.b) v /= n;
    return s;
}

double max_component_diff(const SpinorState& x, const SpinorState& y) {
    double d = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        d = std::max(d, std::abs(x.a[i] - y.a[i]));
        d = std::max(d, std::abs(x.b[i] - y.b[i]));
    }
    return d;
}

ModelParams resonant_params(double kappa, int k_max) {
    ModelParams p;
    p.kappa = kappa;
    p.tau = 2.0 * M_PI;
    p.delta_tilde = 0.0;
    p.beta = 0.0;
    p.k_max = k_max;
    return p;
}

std::vector<CheckResult> suite_bessel(Rng& rng) {
    std::vector<CheckResult> out;

    double worst = 0.0;
    for (double x : {0.5, 1.0, 5.0, 50.0, 500.0}) {
        const int top = bessel_band(x) + 4;
        std::vector<double> row = bessel_row(-top, top, x);
        double s = 0.0;
        for (double v : row) s += v * v;
        worst = std::max(worst, std::abs(s - 1.0));
    }
    out.push_back({"bessel/completeness sum J_m^2 = 1", worst, 1e-13});

    worst = 0.0;
    std::uniform_real_distribution<double> xdist(0.1, 30.0);
    for (int i = 0; i < 50; ++i) {
        const double x = xdist(rng);
        const int n = static_cast<int>(i % 12);
        const double lhs = bessel_j(-n, x);
        const double rhs = (n % 2 ? -1.0 : 1.0) * bessel_j(n, x);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    out.push_back({"bessel/parity J_{-n} = (-1)^n J_n", worst, 1e-16});

    worst = 0.0;
    for (double x : {0.5, 2.0, 17.0, 123.0, 1234.0}) {
        const int top = bessel_band(x) + 4;
        std::vector<double> row = bessel_row(0, top, x);
        double s = row[0];
        for (int m = 2; m <= top; m += 2) s += 2.0 * row[m];
        worst = std::max(worst, std::abs(s - 1.0));
    }
    out.push_back({"bessel/neumann normalization", worst, 1e-12});

    worst = 0.0;
    for (double x : {1.0, 10.0, 100.0, 1000.0, 10000.0}) {
        const int m0 = bessel_band(x);
        for (int m = m0 + 1; m <= m0 + 20; ++m)
            worst = std::max(worst, std::abs(bessel_j(m, x)));
    }
    out.push_back({"bessel/turning-point decay beyond band rule", worst, 1e-16});

    worst = 0.0;
    std::uniform_real_distribution<double> big(2000.0, 20000.0);
    for (int i = 0; i < 40; ++i) {
        const double x = big(rng);
        const int n = static_cast<int>(i % 8);
        const double a = bessel_j(n, x, BesselMethod::BackwardRecurrence);
        const double b = bessel_j(n, x, BesselMethod::AsymptoticLargeX);
        worst = std::max(worst, std::abs(a - b));
    }
    out.push_back({"bessel/recurrence-asymptotic overlap", worst, 1e-12});

    return out;
}

std::vector<CheckResult> suite_identities(Rng& rng) {
    std::vector<CheckResult> out;
    std::uniform_real_distribution<double> kdist(1e-6, 5.0);
    std::uniform_int_distribution<int> mudist(-10, 10);

    double worst = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double kappa = kdist(rng);
        const int mu = mudist(rng);
        const int band = bessel_band(kappa) + std::abs(mu) + 4;
        worst = std::max(worst, addition_identity_residual(kappa, mu, band));
    }
    out.push_back({"identities/addition (A1)", worst, 1e-13});

    double worst_even = 0.0, worst_both = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double kappa = kdist(rng);
        const int k0 = mudist(rng);
        const int k2 = mudist(rng);
        const int band = bessel_band(kappa) + std::abs(k2 - k0) + 4;
        auto [re, rb] = parity_sum_residuals(kappa, k0, k2, band);
        worst_even = std::max(worst_even, re);
        worst_both = std::max(worst_both, rb);
    }
    out.push_back({"identities/parity sum (A2)", worst_even, 1e-13});
    out.push_back({"identities/parity sum (A3)", worst_both, 1e-13});

    double w1 = 0.0, w2 = 0.0;
    for (double kappa : {0.3, 1.0, 2.7}) {
        const int band = bessel_band(kappa) + 14;
        for (int j = -10; j <= 10; ++j)
            for (int l = -10; l <= 10; ++l) {
                w1 = std::max(w1, std::abs(moment_sum_i1(j, l, kappa) -
                                           moment_sum_i1_direct(j, l, kappa, band)));
                w2 = std::max(w2, std::abs(moment_sum_i2(j, l, kappa) -
                                           moment_sum_i2_direct(j, l, kappa, band)));
            }
    }
    out.push_back({"identities/moment sum I1 (B)", w1, 1e-12});
    out.push_back({"identities/moment sum I2 (B)", w2, 1e-12});
    return out;
}

std::vector<CheckResult> suite_backends(Rng& rng) {
    std::vector<CheckResult> out;
    std::uniform_real_distribution<double> kdist(0.0, 2.5);
    std::uniform_real_distribution<double> tdist(0.0, 4.0 * M_PI);
    std::uniform_real_distribution<double> ddist(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> bdist(-0.5, 0.5);
    const int k_max = 48;

    double cross = 0.0, unit = 0.0;
    for (int i = 0; i < 100; ++i) {
        ModelParams p;
        p.kappa = kdist(rng);
        p.tau = tdist(rng);
        p.delta_tilde = ddist(rng);
        p.beta = (i % 3 == 0) ? 0.0 : bdist(rng);
        p.k_max = k_max;
        SpinorState s = random_localized_state(rng, k_max, 8);
        StepOperator ob(p, Backend::BesselMatrix);
        StepOperator os(p, Backend::SplitStep);
        SpinorState rb = step_bessel(s, ob);
        SpinorState rs = step_splitstep(s, os);
        cross = std::max(cross, max_component_diff(rb, rs));
        unit = std::max(unit, std::abs(total_norm(rb) - 1.0));
        unit = std::max(unit, std::abs(total_norm(rs) - 1.0));
    }
    out.push_back({"backends/bessel vs split-step (100 random)", cross, 1e-10});
    out.push_back({"backends/unitarity of one step", unit, 1e-12});

    if (kernels::avx2()) {
        double kd = 0.0;
        std::normal_distribution<double> gauss;
        for (int i = 0; i < 20; ++i) {
            const int n = 2 * k_max + 1;
            const int band = 1 + static_cast<int>(i % 24);
            std::vector<cplx> a(n), b(n), w(2 * band + 1);
            std::vector<cplx> oa1(n), ob1(n), oa2(n), ob2(n);
            for (auto* v : {&a, &b, &w})
                for (auto& z : *v) z = cplx{gauss(rng), gauss(rng)};
            kernels::scalar().kick_conv(a.data(), b.data(), oa1.data(),
                                        ob1.data(), w.data(), band, n);
            kernels::avx2()->kick_conv(a.data(), b.data(), oa2.data(),
                                       ob2.data(), w.data(), band, n);
            for (int q = 0; q < n; ++q) {
                kd = std::max(kd, std::abs(oa1[q] - oa2[q]));
                kd = std::max(kd, std::abs(ob1[q] - ob2[q]));
            }
        }
        out.push_back({"backends/scalar vs avx2 kernels", kd, 1e-12});
    }
    return out;
}

std::vector<CheckResult> suite_closedform(Rng& rng) {
    std::vector<CheckResult> out;

    double worst = 0.0;
    for (double kappa : {0.5, 1.0, 2.0}) {
        const int n = 100;
        const int k_max = required_k_max(17, 1, n * kappa);
        SpinorState s0 = random_localized_state(rng, k_max, 8);
        ModelParams p = resonant_params(kappa, k_max);
        StepOperator op(p, Backend::BesselMatrix);
        SpinorState s = s0;
        for (int t = 1; t <= n; ++t) {
            op.apply(s);
            if (t == n || t == n / 2) {
                SpinorState cf = resonant_state(s0, kappa, t);
                worst = std::max(worst, max_component_diff(s, cf));
            }
        }
    }
    out.push_back({"closedform/resonant wave function vs iteration", worst, 1e-10});

    worst = 0.0;
    {
        const int k_max = 64;
        ModelParams p = resonant_params(1.0, k_max);
        p.delta_tilde = M_PI;
        StepOperator op(p, Backend::BesselMatrix);
        SpinorState s0 = random_localized_state(rng, k_max, 8);
        SpinorState s = s0;
        for (int t = 1; t <= 100; ++t) {
            op.apply(s);
            SpinorState cf = antiresonant_state(s0, 1.0, t);
            worst = std::max(worst, max_component_diff(s, cf));
        }
    }
    out.push_back({"closedform/antiresonant wave function vs iteration", worst, 1e-12});

    worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        std::uniform_real_distribution<double> kdist(0.2, 1.0);
        const double kappa = kdist(rng);
        const int n = 30;
        const int k_max = required_k_max(17, n, kappa);
        ModelParams p = resonant_params(kappa, k_max);
        ModelParams pn = resonant_params(n * kappa, k_max);
        SpinorState s = random_localized_state(rng, k_max, 8);
        SpinorState one = s;
        StepOperator op(p, Backend::BesselMatrix);
        for (int t = 0; t < n; ++t) op.apply(s);
        StepOperator opn(pn, Backend::BesselMatrix);
        opn.apply(one);
        worst = std::max(worst, max_component_diff(s, one));
    }
    out.push_back({"closedform/semigroup n steps = one step at n*kappa", worst, 1e-10});

    worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double kappa = 1.0;
        const int n = 40;
        const int k_max = required_k_max(17, n, kappa);
        SpinorState s0 = random_localized_state(rng, k_max, 8);
        Trajectory traj = evolve(s0, resonant_params(kappa, k_max), n,
                                 Backend::BesselMatrix);
        auto [m1, m2] = analytic_moments(s0, kappa, n);
        const StepRecord& rec = traj.steps.back();
        worst = std::max(worst, std::abs(rec.m1 - m1) / std::max(1.0, std::abs(m1)));
        worst = std::max(worst, std::abs(rec.m2 - m2) / std::max(1.0, std::abs(m2)));
    }
    out.push_back({"closedform/analytic moments vs iteration (relative)", worst, 1e-8});

    worst = 0.0;
    {
        std::uniform_real_distribution<double> gdist(0.0, M_PI);
        std::uniform_real_distribution<double> fdist(0.0, 2.0 * M_PI);
        for (int trial = 0; trial < 20; ++trial) {
            BlochInit init{gdist(rng), fdist(rng)};
            const double kappa = 0.8;
            const int n = 25;
            const int k_max = required_k_max(1, n, kappa);
            SpinorState cf = localized_resonant_state(init, kappa, n, k_max);
            ReducedDensityMatrix lattice = reduced_density(cf);
            ReducedDensityMatrix closed = closed_form_occupations(init, kappa, n);
            worst = std::max({worst, std::abs(lattice.p_g - closed.p_g),
                              std::abs(lattice.p_e - closed.p_e),
                              std::abs(lattice.q - closed.q)});
        }
    }
    out.push_back({"closedform/occupations vs lattice sums", worst, 1e-12});
    return out;
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          std::uint64_t seed) {
    Rng rng(seed);
    if (suite == "bessel") return suite_bessel(rng);
    if (suite == "identities") return suite_identities(rng);
    if (suite == "backends") return suite_backends(rng);
    if (suite == "closedform") return suite_closedform(rng);
    if (suite == "all") {
        std::vector<CheckResult> out;
        for (const char* name : {"bessel", "identities", "backends", "closedform"}) {
            auto part = run_verify_suite(name, seed);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw std::invalid_argument("unknown verify suite: " + suite);
}

}  // namespace qkr

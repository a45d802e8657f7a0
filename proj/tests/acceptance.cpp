// End-to-end acceptance checks: one line per criterion, nonzero exit if
// any fails.  Tolerances are part of the project contract, not tunables.

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "qkr/analysis.hpp"
#include "qkr/bessel.hpp"
#include "qkr/closed_form.hpp"
#include "qkr/evolve.hpp"
#include "qkr/state.hpp"
#include "qkr/step.hpp"

using namespace qkr;

namespace {

int failures = 0;

void report(int index, const char* what, double residual, double tol) {
    const bool ok = residual < tol;
    if (!ok) ++failures;
    std::printf("%s  [%d] %-58s max residual %.3e (tol %.0e)\n",
                ok ? "PASS" : "FAIL", index, what, residual, tol);
}

SpinorState random_state(std::mt19937_64& rng, int k_max, int support) {
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

double max_diff(const SpinorState& x, const SpinorState& y) {
    double d = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        d = std::max(d, std::abs(x.a[i] - y.a[i]));
        d = std::max(d, std::abs(x.b[i] - y.b[i]));
    }
    return d;
}

ModelParams resonant(double kappa, int k_max) {
    return ModelParams{kappa, 2.0 * M_PI, 0.0, 0.0, k_max};
}

// [1] Ballistic law at resonance: m2(n) = (kappa n)^2 / 2 for the
//     ground-chirality start, relative error < 1e-8 up to n = 100.
void criterion_ballistic() {
    const double kappa = 1.0;
    const int k_max = 160;
    SpinorState s0 = bloch_state({M_PI, 0.0}, k_max);
    Trajectory traj = evolve(s0, resonant(kappa, k_max), 100, Backend::BesselMatrix);
    double worst = 0.0;
    for (const StepRecord& r : traj.steps) {
        if (r.n == 0) continue;
        const double expect = 0.5 * kappa * kappa * r.n * r.n;
        worst = std::max(worst, std::abs(r.m2 - expect) / expect);
    }
    report(1, "resonant m2 follows (kappa n)^2/2, relative", worst, 1e-8);
}

// [2] Antiresonance: any state returns to itself after every even number
//     of periods, componentwise to 1e-12.
void criterion_antiresonance() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int k_max = 96;
        ModelParams p{1.0 + 0.05 * trial, 2.0 * M_PI, M_PI, 0.0, k_max};
        StepOperator op(p, Backend::BesselMatrix);
        SpinorState s0 = random_state(rng, k_max, 8);
        SpinorState s = s0;
        const int n = 2 * (1 + static_cast<int>(rng() % 25));  // up to 50
        for (int t = 0; t < n; ++t) op.apply(s);
        worst = std::max(worst, max_diff(s, s0));
    }
    report(2, "antiresonant recurrence after even periods", worst, 1e-12);
}

// [3] Resonant semigroup: n kicks at kappa equal one kick at n*kappa.
void criterion_semigroup() {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> kd(0.1, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const double kappa = kd(rng);
        const int n = 5 + static_cast<int>(rng() % 46);  // up to 50
        const int k_max = required_k_max(17, n, kappa);
        SpinorState s = random_state(rng, k_max, 8);
        SpinorState one = s;
        StepOperator op(resonant(kappa, k_max), Backend::BesselMatrix);
        for (int t = 0; t < n; ++t) op.apply(s);
        StepOperator opn(resonant(n * kappa, k_max), Backend::BesselMatrix);
        opn.apply(one);
        worst = std::max(worst, max_diff(s, one));
    }
    report(3, "semigroup composition at resonance", worst, 1e-10);
}

// [4] The two independent propagators agree on random parameter sets,
//     including nonzero quasimomentum.
void criterion_backends() {
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> kd(0.0, 2.5);
    std::uniform_real_distribution<double> td(0.0, 4.0 * M_PI);
    std::uniform_real_distribution<double> bd(-0.5, 0.5);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        ModelParams p{kd(rng), td(rng), td(rng), i % 3 ? bd(rng) : 0.0, 48};
        SpinorState s = random_state(rng, 48, 8);
        StepOperator ob(p, Backend::BesselMatrix);
        StepOperator os(p, Backend::SplitStep);
        worst = std::max(worst, max_diff(step_bessel(s, ob), step_splitstep(s, os)));
    }
    report(4, "bessel-matrix vs split-step propagator, 100 draws", worst, 1e-10);
}

// [5] Closed-form resonant wave functions reproduce the iterated map.
void criterion_closed_form() {
    std::mt19937_64 rng(109);
    double worst = 0.0;
    for (double kappa : {0.5, 1.0, 2.0}) {
        const int n = 100;
        const int k_max = required_k_max(17, 1, n * kappa);
        SpinorState s0 = random_state(rng, k_max, 8);
        StepOperator op(resonant(kappa, k_max), Backend::BesselMatrix);
        SpinorState s = s0;
        for (int t = 1; t <= n; ++t) {
            op.apply(s);
            if (t % 10 == 0 || t == 1)
                worst = std::max(worst, max_diff(s, resonant_state(s0, kappa, t)));
        }
    }
    report(5, "closed-form resonant states vs iteration", worst, 1e-10);
}

// [6] Entanglement entropy over a 33x33 Bloch-angle grid approaches the
//     asymptotic law at n*kappa = 500; exact on the phi = pi/2 line.
void criterion_entropy_grid() {
    const double kappa = 1.0;
    const int n = 500;
    const int k_max = required_k_max(1, n, kappa);
    const int grid = 33;
    double worst = 0.0, worst_line = 0.0;
    for (int gi = 0; gi < grid; ++gi) {
        const double gamma = M_PI * gi / (grid - 1);
        for (int fi = 0; fi < grid; ++fi) {
            const double phi = 2.0 * M_PI * fi / (grid - 1);
            const double s = entanglement_entropy(reduced_density(
                localized_resonant_state({gamma, phi}, kappa, n, k_max)));
            const double s0 = asymptotic_entropy({gamma, phi});
            worst = std::max(worst, std::abs(s - s0));
        }
        worst_line = std::max(worst_line,
                              std::abs(asymptotic_entropy({gamma, M_PI / 2.0}) - 1.0));
    }
    report(6, "entropy grid vs asymptote at n*kappa = 500", worst, 0.02);
    report(6, "asymptote is exactly one bit on the phi = pi/2 line",
           worst_line, 1e-12);
}

// [7] Near antiresonance the late-time slope is still 2 within 0.05 and
//     the transient oscillation grows monotonically toward pi.
void criterion_growth_fit() {
    const int steps = 500;
    double worst_slope = 0.0;
    double prev_amp = -1.0;
    bool monotone = true;
    for (double frac : {0.5, 0.9, 0.97}) {
        ModelParams p{1.0, 2.0 * M_PI, frac * M_PI, 0.0,
                      required_k_max(1, steps, 1.0)};
        SpinorState s0 = bloch_state({M_PI, 0.0}, p.k_max);
        Trajectory traj = evolve(s0, p, steps, Backend::BesselMatrix);
        std::vector<double> m2;
        for (const auto& r : traj.steps) m2.push_back(r.m2);
        GrowthFit fit = fit_growth(m2);
        if (fit.refused) {
            worst_slope = 1e9;
            break;
        }
        worst_slope = std::max(worst_slope, std::abs(fit.slope - 2.0));
        monotone = monotone && fit.transient_amplitude > prev_amp;
        prev_amp = fit.transient_amplitude;
    }
    report(7, "late-time slope stays quadratic near antiresonance",
           worst_slope, 0.05);
    report(7, "transient amplitude grows toward antiresonance",
           monotone ? 0.0 : 1.0, 0.5);
}

// [8] The Bessel sum identities behind the moment algebra hold to 1e-12.
void criterion_identities() {
    double worst = 0.0;
    for (double kappa : {0.3, 1.0, 2.7}) {
        const int band = bessel_band(kappa) + 14;
        for (int mu = -10; mu <= 10; ++mu)
            worst = std::max(worst, addition_identity_residual(kappa, mu, band));
        for (int k0 = -5; k0 <= 5; ++k0)
            for (int k2 = -5; k2 <= 5; ++k2) {
                auto [re, rb] = parity_sum_residuals(kappa, k0, k2, band);
                worst = std::max({worst, re, rb});
            }
        for (int j = -10; j <= 10; ++j)
            for (int l = -10; l <= 10; ++l) {
                worst = std::max(worst,
                                 std::abs(moment_sum_i1(j, l, kappa) -
                                          moment_sum_i1_direct(j, l, kappa, band)));
                worst = std::max(worst,
                                 std::abs(moment_sum_i2(j, l, kappa) -
                                          moment_sum_i2_direct(j, l, kappa, band)));
            }
    }
    report(8, "Bessel addition, parity and moment identities", worst, 1e-12);
}

// [9] Long-run conservation: norm drift below 1e-10 over 1000 periods on
//     a lattice sized so edge leakage stays below 1e-12.
void criterion_conservation() {
    const double kappa = 1.0;
    const int steps = 1000;
    // sized off the true turning-point tail so leakage stays below 1e-12
    // (the +40 heuristic of required_k_max is too tight at n*kappa = 1000)
    const int k_max = bessel_band(steps * kappa) + 32;
    SpinorState s0 = bloch_state({M_PI, 0.0}, k_max);
    Trajectory traj = evolve(s0, resonant(kappa, k_max), steps,
                             Backend::BesselMatrix);
    double drift = 0.0, leak = 0.0;
    for (const StepRecord& r : traj.steps) {
        drift = std::max(drift, std::abs(r.norm - 1.0));
        leak = std::max(leak, r.leak);
    }
    report(9, "norm conservation over 1000 periods", drift, 1e-10);
    report(9, "edge leakage over 1000 periods", leak, 1e-12);
}

}  // namespace

int main() {
    criterion_ballistic();
    criterion_antiresonance();
    criterion_semigroup();
    criterion_backends();
    criterion_closed_form();
    criterion_entropy_grid();
    criterion_growth_fit();
    criterion_identities();
    criterion_conservation();
    if (failures) std::printf("%d criterion check(s) FAILED\n", failures);
    return failures ? 1 : 0;
}

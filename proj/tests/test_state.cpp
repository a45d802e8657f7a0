#include <doctest.h>

#include <cmath>
#include <random>

#include "qkr/state.hpp"

using namespace qkr;

TEST_SUITE("state") {

TEST_CASE("reduce_beta maps into [-1/2, 1/2)") {
    CHECK(reduce_beta(0.0) == 0.0);
    CHECK(reduce_beta(0.75) == doctest::Approx(-0.25));
    CHECK(reduce_beta(-0.75) == doctest::Approx(0.25));
    CHECK(reduce_beta(0.5) == doctest::Approx(-0.5));
    CHECK(reduce_beta(-0.5) == doctest::Approx(-0.5));
    CHECK(reduce_beta(3.25) == doctest::Approx(0.25));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> bd(-20.0, 20.0);
    for (int i = 0; i < 200; ++i) {
        const double b = reduce_beta(bd(rng));
        CHECK(b >= -0.5);
        CHECK(b < 0.5);
    }
}

TEST_CASE("make_params builds the dimensionless set") {
    // tau = k^2 hbar T / 2M, kappa = |kick/hbar|, delta_tilde = T Delta
    ModelParams p = make_params(2.0, 1.0, 1.0, 0.5, 2.0 * M_PI, 0.25, 0.75, 32);
    CHECK(p.kappa == doctest::Approx(2.0));
    CHECK(p.tau == doctest::Approx(2.0 * M_PI));
    CHECK(p.delta_tilde == doctest::Approx(0.5 * M_PI));
    CHECK(p.beta == doctest::Approx(-0.25));
    CHECK(p.k_max == 32);

    ModelParams q = make_params(-3.0, 2.0, 2.0, 1.0, 0.5, 0.0, 0.0, 8);
    CHECK(q.kappa == doctest::Approx(1.5));  // sign dropped
    CHECK(q.tau == doctest::Approx(2.0));
}

TEST_CASE("make_params rejects unphysical inputs") {
    CHECK_THROWS_AS(make_params(1, 1, 1, 0.0, 1, 0, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1, 1, 1, -2.0, 1, 0, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1, 1, 1, 1, 0.0, 0, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1, 0.0, 1, 1, 1, 0, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1, 1, 0.0, 1, 1, 0, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1, 1, 1, 1, 1, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("bloch_state places the chirality spinor at k = 0") {
    SpinorState g = bloch_state({M_PI, 0.0}, 4);
    CHECK(std::abs(g.at_b(0) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(g.at_a(0)) < 1e-15);

    SpinorState e = bloch_state({0.0, 0.0}, 4);
    CHECK(std::abs(e.at_a(0) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(e.at_b(0)) < 1e-15);

    SpinorState s = bloch_state({M_PI / 2.0, M_PI / 2.0}, 4);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.at_a(0) - cplx{r, 0.0}) < 1e-15);
    CHECK(std::abs(s.at_b(0) - cplx{0.0, r}) < 1e-15);
    for (int k = -4; k <= 4; ++k) {
        if (k == 0) continue;
        CHECK(s.at_a(k) == cplx{0.0, 0.0});
        CHECK(s.at_b(k) == cplx{0.0, 0.0});
    }
    CHECK(total_norm(s) == doctest::Approx(1.0));
}

TEST_CASE("bloch_state rejects angles outside their ranges") {
    CHECK_THROWS_AS(bloch_state({-0.1, 0.0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(bloch_state({3.5, 0.0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(bloch_state({1.0, -0.1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(bloch_state({1.0, 7.0}, 2), std::invalid_argument);
}

TEST_CASE("index map round-trips") {
    SpinorState s(5);
    CHECK(s.size() == 11);
    CHECK(s.idx(-5) == 0);
    CHECK(s.idx(0) == 5);
    CHECK(s.idx(5) == 10);
    s.at_a(-5) = cplx{1.0, 2.0};
    CHECK(s.a[0] == cplx{1.0, 2.0});
    CHECK_THROWS_AS(SpinorState(0), std::invalid_argument);
}

TEST_CASE("moments of simple distributions") {
    SpinorState s(6);
    s.at_a(2) = 1.0;  // all mass at k = 2
    Moments m = moments(s);
    CHECK(m.m1 == doctest::Approx(2.0));
    CHECK(m.m2 == doctest::Approx(4.0));
    CHECK(m.variance == doctest::Approx(0.0));

    // symmetric distribution: m1 = 0, variance = m2
    SpinorState t(6);
    t.at_a(3) = 0.5;
    t.at_a(-3) = 0.5;
    t.at_b(1) = 0.5;
    t.at_b(-1) = 0.5;
    Moments mt = moments(t);
    CHECK(mt.m1 == doctest::Approx(0.0));
    CHECK(mt.m2 == doctest::Approx(0.25 * 9 * 2 + 0.25 * 1 * 2));
    CHECK(mt.variance == doctest::Approx(mt.m2));
}

TEST_CASE("probability distribution and norm are consistent") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss;
    SpinorState s(12);
    for (auto& v : s.a) v = cplx{gauss(rng), gauss(rng)};
    for (auto& v : s.b) v = cplx{gauss(rng), gauss(rng)};
    std::vector<double> p = probability_distribution(s);
    double sum = 0.0;
    for (double v : p) sum += v;
    CHECK(sum == doctest::Approx(total_norm(s)).epsilon(1e-14));
}

TEST_CASE("leakage measures only the outer margin") {
    SpinorState s(10);
    s.at_a(-10) = 0.5;
    s.at_b(9) = 0.5;
    s.at_a(0) = 1.0;
    CHECK(leakage(s, 0) == 0.0);
    CHECK(leakage(s, 1) == doctest::Approx(0.25));
    CHECK(leakage(s, 2) == doctest::Approx(0.5));
    CHECK(leakage(s, 3) == doctest::Approx(0.5));
    CHECK_THROWS_AS(leakage(s, -1), std::invalid_argument);
    CHECK_THROWS_AS(leakage(s, 10), std::invalid_argument);
}

}

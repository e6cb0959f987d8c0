#include "doctest.h"
#include "test_util.hpp"
#include "vs/oracle.hpp"
#include "vs/trig.hpp"

using namespace vs;
using cd = std::complex<double>;

TEST_CASE("embedding a sine mode splits into two conjugate lattice points") {
    TrigPolynomial a = embed_sine_to_trig(sine_mode({3}));
    REQUIRE(a.coeff.size() == 2);
    CHECK(std::abs(a.coeff.at({3}) - cd(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(a.coeff.at({-3}) - cd(0.0, 0.5)) < 1e-15);
    CHECK(a.realValued);
    CHECK(check_conjugate_symmetry(a));
}

TEST_CASE("embedding matches the sine series pointwise") {
    std::mt19937 rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        int d = 1 + int(rng() % 2);
        SineFunction f = vstest::random_sine(d, 4, rng);
        TrigPolynomial a = embed_sine_to_trig(f);
        CHECK(check_conjugate_symmetry(a));
        std::uniform_real_distribution<double> U(0.0, 1.0);
        for (int q = 0; q < 10; ++q) {
            std::vector<double> x(d);
            for (double& xi : x) xi = U(rng);
            cd v = eval_trig(a, x);
            CHECK(std::abs(v.imag()) < 1e-12);
            CHECK(v.real() == doctest::Approx(eval_point(f, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("trig multiplication is the exact pointwise product") {
    TrigPolynomial s1 = embed_sine_to_trig(sine_mode({1}));
    TrigPolynomial sq = trig_multiply(s1, s1);
    CHECK(eval_trig(sq, {0.5}).real() == doctest::Approx(1.0).epsilon(1e-14));
    for (int j = 0; j < 64; ++j) {
        double x = (j + 0.5) / 64.0;
        double expect = std::sin(kPi * x) * std::sin(kPi * x);
        CHECK(std::abs(eval_trig(sq, {x}) - cd(expect, 0.0)) < 1e-12);
    }
    CHECK(dense_product_check(s1, s1, 64) < 1e-12);
}

TEST_CASE("trig derivative rule") {
    TrigPolynomial a = embed_sine_to_trig(sine_mode({2}));
    TrigPolynomial da = trig_derivative(a, 0);
    // d/dx sin(2 pi x) = 2 pi cos(2 pi x); zero at x = 1/4
    CHECK(std::abs(eval_trig(da, {0.25})) < 1e-14);
    CHECK(eval_trig(da, {0.5}).real() == doctest::Approx(2.0 * kPi * std::cos(kPi)).epsilon(1e-13));
    CHECK_THROWS_AS(trig_derivative(a, 1), std::invalid_argument);
}

TEST_CASE("product support lies in the Minkowski sum and attains it") {
    std::mt19937 rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        int d = 1 + int(rng() % 2);
        TrigPolynomial a = vstest::random_trig(d, 3, rng);
        TrigPolynomial b = vstest::random_trig(d, 4, rng);
        TrigPolynomial ab = trig_multiply(a, b);
        CHECK(lattice_radius(ab) <= lattice_radius(a) + lattice_radius(b));
    }
    // positive coefficients cannot cancel, so the sum radius is attained
    TrigPolynomial p(1, false), q(1, false);
    p.coeff[{3}] = 1.0;
    p.coeff[{-3}] = 1.0;
    q.coeff[{4}] = 2.0;
    q.coeff[{-4}] = 2.0;
    CHECK(lattice_radius(trig_multiply(p, q)) == 7);
}

TEST_CASE("dense product check oracles") {
    TrigPolynomial zero(1, true);
    TrigPolynomial s1 = embed_sine_to_trig(sine_mode({1}));
    CHECK(dense_product_check(zero, s1, 16) == 0.0);
    std::mt19937 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        int d = 1 + int(rng() % 2);
        TrigPolynomial a = vstest::random_trig(d, 5, rng);
        TrigPolynomial b = vstest::random_trig(d, 6, rng);
        CHECK(dense_product_check(a, b, d == 1 ? 64 : 32) < 1e-12);
    }
    CHECK_THROWS_AS(dense_product_check(s1, s1, 1), std::invalid_argument);
}

TEST_CASE("trig preconditioner shrinks every coefficient") {
    std::mt19937 rng(37);
    TrigPolynomial a = vstest::random_trig(2, 4, rng);
    TrigPolynomial pa = trig_precondition(a);
    for (const auto& [n, c] : pa.coeff) CHECK(std::abs(c) <= std::abs(a.coeff.at(n)));
    // identity on the DC mode
    TrigPolynomial dc(1, true);
    dc.coeff[{0}] = 2.0;
    CHECK(std::abs(trig_precondition(dc).coeff.at({0}) - cd(2.0, 0.0)) < 1e-15);
}

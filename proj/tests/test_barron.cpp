#include "doctest.h"
#include "test_util.hpp"
#include "vs/barron.hpp"
#include "vs/lagrangian.hpp"

using namespace vs;

TEST_CASE("barron norm of embedded modes") {
    CHECK(barron_norm(embed_sine_to_trig(sine_mode({3}))) == doctest::Approx(2.5).epsilon(1e-14));
    TrigPolynomial zero(1, true);
    CHECK(barron_norm(zero) == 0.0);
    CHECK(barron_norm(embed_sine_to_trig(sine_mode({3, 4}))) == doctest::Approx(3.5).epsilon(1e-14));
}

TEST_CASE("algebra bound rules with computed-norm soundness") {
    TrigPolynomial f3 = embed_sine_to_trig(sine_mode({3}));
    BarronCertificate c3 = certificate_of(f3);
    CHECK(c3.value == doctest::Approx(2.5));
    CHECK(c3.bandlimit == doctest::Approx(3.0));

    BarronCertificate mul = bound_mul(c3, c3);
    CHECK(mul.value == doctest::Approx(6.25));
    CHECK(barron_norm(trig_multiply(f3, f3)) <= mul.value + 1e-10);

    BarronCertificate zero;
    zero.value = 0.0;
    BarronCertificate add = bound_add(c3, zero);
    CHECK(add.value == doctest::Approx(2.5));

    BarronCertificate der = bound_derivative(c3, 3.0);
    CHECK(der.value == doctest::Approx(15.0 * kPi));
    CHECK(der.value == doctest::Approx(47.1238898).epsilon(1e-7));
    CHECK(barron_norm(trig_derivative(f3, 0)) <= der.value + 1e-10);

    BarronCertificate pre = bound_precondition(c3);
    CHECK(pre.value == doctest::Approx(2.5));
    CHECK(barron_norm(trig_precondition(f3)) <= pre.value + 1e-10);
}

TEST_CASE("soundness of every rule over random polynomial pairs") {
    std::mt19937 rng(55);
    for (int rep = 0; rep < 60; ++rep) {
        int d = 1 + int(rng() % 2);
        TrigPolynomial a = vstest::random_trig(d, 1 + int(rng() % 6), rng);
        TrigPolynomial b = vstest::random_trig(d, 1 + int(rng() % 6), rng);
        BarronCertificate ca = certificate_of(a), cb = certificate_of(b);
        CHECK(barron_norm(trig_add(a, b)) <= bound_add(ca, cb).value + 1e-10);
        CHECK(barron_norm(trig_multiply(a, b)) <= bound_mul(ca, cb).value + 1e-10);
        CHECK(barron_norm(trig_derivative(a, 0)) <= bound_derivative(ca, ca.bandlimit).value + 1e-10);
        CHECK(barron_norm(trig_precondition(a)) <= bound_precondition(ca).value + 1e-10);
    }
}

TEST_CASE("polynomial composition bound") {
    BarronCertificate g;
    g.value = 2.5;
    g.bandlimit = 3.0;
    BarronCertificate ident = poly_composition_bound({1.0}, 1, 1, g);
    CHECK(ident.value == doctest::Approx(2.5));
    CHECK(ident.bandlimit == doctest::Approx(3.0));

    BarronCertificate square = poly_composition_bound({1.0}, 2, 1, g);
    CHECK(square.value == doctest::Approx(6.25));
    CHECK(square.bandlimit == doctest::Approx(6.0));
    // exact squared function stays below the bound
    TrigPolynomial f3 = embed_sine_to_trig(sine_mode({3}));
    CHECK(barron_norm(trig_multiply(f3, f3)) <= square.value + 1e-10);

    BarronCertificate unit;
    unit.value = 1.0;
    unit.bandlimit = 1.0;
    BarronCertificate two = poly_composition_bound({1.0, 1.0}, 2, 2, unit);
    CHECK(two.value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(two.value == doctest::Approx(2.828).epsilon(1e-3));
}

TEST_CASE("one-step ledger recursion") {
    AssumptionConstants k;
    k.B = 1.0;
    k.p = 1.0;
    k.k = 1.0;
    BarronCertificate u;
    u.value = 1.0;
    u.bandlimit = 1.0;
    BarronCertificate next = recursion_bound(u, 1.0, 0.1, 2, k);
    CHECK(next.value == doctest::Approx(9.624).epsilon(1e-3));
    CHECK(next.bandlimit == doctest::Approx(2.0 * kPi));

    // eta -> 0 collapses to ||u||^p
    k.p = 2.0;
    u.value = 3.0;
    CHECK(recursion_bound(u, 5.0, 0.0, 2, k).value == doctest::Approx(9.0));

    // linear no-growth case
    k.p = 1.0;
    k.B = 0.0;
    CHECK(recursion_bound(u, 5.0, 0.25, 2, k).value == doctest::Approx(3.0 + 0.25 * 5.0));
}

TEST_CASE("closed-form iterate bound is monotone in its drivers") {
    AssumptionConstants k;
    k.B = 1.0;
    k.p = 1.0;
    k.k = 1.0;
    double prev = 0.0;
    for (int T = 0; T <= 5; ++T) {
        double v = final_norm_bound(T, 0.1, 1.0, 2, 1.0, 1.0, k);
        CHECK(v >= prev);
        prev = v;
    }
    for (double B : {0.0, 0.5, 1.0, 2.0})
        for (double p : {1.0, 1.5, 2.0})
            for (double W0 : {1.0, 2.0})
                for (double fn : {0.0, 1.0})
                    for (double u0 : {0.5, 1.0, 2.0}) {
                        AssumptionConstants kk;
                        kk.B = B;
                        kk.p = p;
                        kk.k = 1.0;
                        double lo = final_norm_bound(3, 0.1, W0, 2, fn, u0, kk);
                        kk.B = B + 0.5;
                        CHECK(final_norm_bound(3, 0.1, W0, 2, fn, u0, kk) >= lo - 1e-12);
                        kk.B = B;
                        CHECK(final_norm_bound(4, 0.1, W0, 2, fn, u0, kk) >= lo - 1e-12);
                        CHECK(final_norm_bound(3, 0.1, W0 + 1.0, 2, fn, u0, kk) >= lo - 1e-12);
                        CHECK(final_norm_bound(3, 0.1, W0, 2, fn + 1.0, u0, kk) >= lo - 1e-12);
                        CHECK(final_norm_bound(3, 0.1, W0, 2, fn, u0 + 1.0, kk) >= lo - 1e-12);
                    }
    // p = 1 uses the limiting exponent 2T
    AssumptionConstants k1;
    k1.B = 1.0;
    k1.p = 1.0;
    k1.k = 1.0;
    double base = (1.0 + 0.1 * 2.0 * kPi * 1.0 * (2.0 * kPi * 2.0 + 1.0)) * (1.0 + 0.1 * 1.0);
    CHECK(final_norm_bound(3, 0.1, 1.0, 2, 1.0, 1.0, k1) ==
          doctest::Approx(std::pow(base, 6.0)).epsilon(1e-12));
}

TEST_CASE("descent schedule constants") {
    const double Cp = poincare_constant(2);
    CHECK(step_size(1.0, 1.0, Cp) == doctest::Approx(0.17689).epsilon(1e-4));
    CHECK(step_size(1.0, 1.0, Cp) ==
          doctest::Approx(1.0 / (4.0 * std::pow(1.0 + Cp, 7))).epsilon(1e-14));
    CHECK(rate(1.0, 1.0, Cp) == doctest::Approx(0.38994).epsilon(1e-4));
    CHECK(rate(1.0, 1.0, Cp) ==
          doctest::Approx(1.0 - 1.0 / std::pow(1.0 + Cp, 10)).epsilon(1e-14));
    CHECK(iteration_count(1e-3, 1.0, 1.0, 1.0, Cp) == 9);
    CHECK(progress_optimal_step(1.0, 1.0, Cp) ==
          doctest::Approx(4.0 * step_size(1.0, 1.0, Cp)).epsilon(1e-14));

    CHECK_THROWS_AS(iteration_count(0.0, 1.0, 1.0, 1.0, Cp), std::invalid_argument);
    CHECK_THROWS_AS(iteration_count(1e-3, 0.0, 1.0, 1.0, Cp), std::invalid_argument);
    // normalization lambda <= 1/Cp
    CHECK_THROWS_AS(step_size(30.0, 30.0, Cp), std::invalid_argument);
    CHECK_THROWS_AS(rate(30.0, 30.0, Cp), std::invalid_argument);
}

TEST_CASE("drift bound closed form") {
    const double Cp = poincare_constant(1);
    CHECK(drift_bound(0, 0.01, 1.0, 2.0, 0.1, Cp) == 0.0);
    const double t1 = drift_bound(1, 0.01, 1.0, 2.0, 0.1, Cp);
    CHECK(t1 == doctest::Approx(0.01 * 2.0 * 0.1 * (1.0 + Cp) * (1.0 + Cp)).epsilon(1e-12));
    for (int t = 0; t < 20; ++t) CHECK(drift_bound(t, 0.0, 1.0, 2.0, 0.1, Cp) == 0.0);
    double prev = 0.0;
    for (int t = 0; t < 20; ++t) {
        double v = drift_bound(t, 0.01, 1.0, 2.0, 0.1, Cp);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("ledger recursion dominates the exact-algebra descent step") {
    // One descent step for the quartic integrand, carried out entirely in
    // the lattice algebra: u' = u - eta P(u + u^3 - u'' - f).  The floored
    // certificate chain must dominate the computed norm for any state,
    // including norms below 1 where the plain power recursion would not.
    LagrangianSpec q = quartic_lagrangian(1, {1e6, 1e6}, 4.0);
    REQUIRE(q.constants.has_value());
    auto scale_trig = [](TrigPolynomial a, double s) {
        for (auto& [n, c] : a.coeff) c *= s;
        return a;
    };
    std::mt19937 rng(71);
    SineFunction f(1, 2);
    f.coeff[{1}] = 0.7;
    f.coeff[{2}] = -0.2;
    TrigPolynomial fT = embed_sine_to_trig(f);
    const double fNorm = barron_norm(fT);
    for (double amp : {0.01, 0.3, 1.0, 2.5})
        for (double eta : {0.001, 0.1, 0.5}) {
            for (int rep = 0; rep < 8; ++rep) {
                SineFunction u = scaled(vstest::random_sine(1, 3, rng), amp);
                TrigPolynomial uT = embed_sine_to_trig(u);
                TrigPolynomial du = trig_derivative(uT, 0);
                TrigPolynomial cube = trig_multiply(trig_multiply(uT, uT), uT);
                TrigPolynomial D = trig_add(trig_add(uT, cube),
                                            scale_trig(trig_derivative(du, 0), -1.0));
                D = trig_add(D, scale_trig(fT, -1.0));
                TrigPolynomial next = trig_add(uT, scale_trig(trig_precondition(D), -eta));

                BarronCertificate cert = certificate_of(uT);
                cert.value = std::max(1.0, cert.value);
                cert.bandlimit = std::max({1.0, cert.bandlimit, double(lattice_radius(fT))});
                BarronCertificate certNext = recursion_bound(cert, fNorm, eta, 1, *q.constants);
                CHECK(barron_norm(next) <= certNext.value + 1e-10);
            }
        }
}

TEST_CASE("certificate chaining keeps an audit trail") {
    BarronCertificate c = certificate_of(embed_sine_to_trig(sine_mode({2})));
    BarronCertificate d = bound_mul(c, c);
    BarronCertificate e = bound_precondition(d);
    REQUIRE(e.trail.size() == 3);
    CHECK(e.trail[0].rule == "computed");
    CHECK(e.trail[1].rule == "mul");
    CHECK(e.trail[2].rule == "precondition");
    CHECK(e.provenance == BarronCertificate::Provenance::propagated);
}

#pragma once

#include <random>

#include "vs/sine.hpp"
#include "vs/trig.hpp"

namespace vstest {

// Random sine series with coefficients in [-1,1] on a fraction of the box.
inline vs::SineFunction random_sine(int d, int W, std::mt19937& rng, double fill = 0.5) {
    vs::SineFunction f(d, W);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::bernoulli_distribution keep(fill);
    vs::for_each_index(d, 1, W, [&](const vs::MultiIndex& w) {
        if (keep(rng)) {
            double v = U(rng);
            if (v != 0.0) f.coeff[w] = v;
        }
    });
    if (f.coeff.empty()) f.coeff[vs::MultiIndex(d, 1)] = U(rng) + 2.0;
    return f;
}

// Random conjugate-symmetric trig polynomial with lattice radius <= W,
// normalized to unit coefficient mass so products stay O(1).
inline vs::TrigPolynomial random_trig(int d, int W, std::mt19937& rng, double fill = 0.4) {
    vs::TrigPolynomial a(d, true);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::bernoulli_distribution keep(fill);
    vs::for_each_index(d, -W, W, [&](const vs::MultiIndex& n) {
        vs::MultiIndex neg = vs::negated(n);
        if (a.coeff.count(neg)) return;  // mirror already chosen
        if (!keep(rng)) return;
        std::complex<double> c(U(rng), U(rng));
        if (n == neg) c = std::complex<double>(c.real(), 0.0);  // n = 0 stays real
        a.coeff[n] = c;
        if (!(n == neg)) a.coeff[neg] = std::conj(c);
    });
    if (a.coeff.empty()) a.coeff[vs::MultiIndex(d, 0)] = 1.0;
    double mass = 0.0;
    for (const auto& [n, c] : a.coeff) mass += std::abs(c);
    for (auto& [n, c] : a.coeff) c /= mass;
    return a;
}

}  // namespace vstest

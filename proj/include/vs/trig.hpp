#pragma once

#include <complex>
#include <map>

#include "vs/sine.hpp"

namespace vs {

// Trigonometric polynomial sum_n c_n exp(i pi n.x) over the integer lattice
// n in Z^d (period-2 modes; the effective frequency of lattice point n is
// n/2 in the exp(i 2 pi w.x) convention).  Real-valued functions carry the
// conjugate-symmetry flag and satisfy c_{-n} = conj(c_n).
struct TrigPolynomial {
    int dim = 1;
    bool realValued = false;
    std::map<MultiIndex, std::complex<double>> coeff;

    TrigPolynomial() = default;
    explicit TrigPolynomial(int d, bool real = false) : dim(d), realValued(real) {
        if (d < 1) throw std::invalid_argument("TrigPolynomial: dimension must be >= 1");
    }
};

// Largest |n_i| over the support (0 for the zero polynomial).
int lattice_radius(const TrigPolynomial& a);

// Exact lattice expansion of a sine series via the Euler split
// sin(t) = (e^{it} - e^{-it}) / (2i) on each axis.
TrigPolynomial embed_sine_to_trig(const SineFunction& f);

// Exact coefficient convolution; support of the product lies in the
// Minkowski sum of the factor supports.
TrigPolynomial trig_multiply(const TrigPolynomial& a, const TrigPolynomial& b);

TrigPolynomial trig_add(const TrigPolynomial& a, const TrigPolynomial& b);

// d/dx_j : multiplies the coefficient at n by i pi n_j.
TrigPolynomial trig_derivative(const TrigPolynomial& a, int axis);

// (I - Delta)^{-1}: divides the coefficient at n by 1 + pi^2 ||n||^2.
TrigPolynomial trig_precondition(const TrigPolynomial& a);

std::complex<double> eval_trig(const TrigPolynomial& a, const std::vector<double>& x);

// Drops coefficients with |c| <= tol (exact zeros by default).
void prune(TrigPolynomial& a, double tol = 0.0);

bool check_conjugate_symmetry(const TrigPolynomial& a, double tol = 1e-14);

}  // namespace vs

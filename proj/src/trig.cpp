#include "vs/trig.hpp"

namespace vs {

using cd = std::complex<double>;

int lattice_radius(const TrigPolynomial& a) {
    int r = 0;
    for (const auto& [n, c] : a.coeff) r = std::max(r, linf(n));
    return r;
}

TrigPolynomial embed_sine_to_trig(const SineFunction& f) {
    TrigPolynomial a(f.dim, true);
    // prod_i sin(pi w_i x_i) expands over the 2^d sign choices s with
    // coefficient prod_i s_i / (2i)^d.
    const cd halfOverI = cd(0.0, -0.5);  // 1/(2i)
    for (const auto& [w, c] : f.coeff) {
        const int d = f.dim;
        std::vector<int> sign(d, 1);
        while (true) {
            MultiIndex n(d);
            cd v(c, 0.0);
            for (int i = 0; i < d; ++i) {
                n[i] = sign[i] * w[i];
                v *= double(sign[i]) * halfOverI;
            }
            a.coeff[n] += v;
            int axis = d - 1;
            while (axis >= 0 && sign[axis] == -1) sign[axis--] = 1;
            if (axis < 0) break;
            sign[axis] = -1;
        }
    }
    prune(a);
    return a;
}

TrigPolynomial trig_multiply(const TrigPolynomial& a, const TrigPolynomial& b) {
    if (a.dim != b.dim) throw std::invalid_argument("trig_multiply: dimension mismatch");
    TrigPolynomial r(a.dim, a.realValued && b.realValued);
    for (const auto& [na, ca] : a.coeff)
        for (const auto& [nb, cb] : b.coeff) r.coeff[added(na, nb)] += ca * cb;
    prune(r);
    return r;
}

TrigPolynomial trig_add(const TrigPolynomial& a, const TrigPolynomial& b) {
    if (a.dim != b.dim) throw std::invalid_argument("trig_add: dimension mismatch");
    TrigPolynomial r = a;
    r.realValued = a.realValued && b.realValued;
    for (const auto& [n, c] : b.coeff) r.coeff[n] += c;
    prune(r);
    return r;
}

TrigPolynomial trig_derivative(const TrigPolynomial& a, int axis) {
    if (axis < 0 || axis >= a.dim) throw std::invalid_argument("trig_derivative: axis out of range");
    TrigPolynomial r(a.dim, a.realValued);
    for (const auto& [n, c] : a.coeff) {
        cd v = c * cd(0.0, kPi * n[axis]);
        if (v != cd(0.0, 0.0)) r.coeff[n] = v;
    }
    return r;
}

TrigPolynomial trig_precondition(const TrigPolynomial& a) {
    TrigPolynomial r(a.dim, a.realValued);
    for (const auto& [n, c] : a.coeff) r.coeff[n] = c / (1.0 + kPi * kPi * l2_squared(n));
    return r;
}

std::complex<double> eval_trig(const TrigPolynomial& a, const std::vector<double>& x) {
    if (int(x.size()) != a.dim) throw std::invalid_argument("eval_trig: point dimension mismatch");
    cd s(0.0, 0.0);
    for (const auto& [n, c] : a.coeff) {
        double phase = 0.0;
        for (int i = 0; i < a.dim; ++i) phase += kPi * n[i] * x[i];
        s += c * std::polar(1.0, phase);
    }
    return s;
}

void prune(TrigPolynomial& a, double tol) {
    for (auto it = a.coeff.begin(); it != a.coeff.end();) {
        if (std::abs(it->second) <= tol)
            it = a.coeff.erase(it);
        else
            ++it;
    }
}

bool check_conjugate_symmetry(const TrigPolynomial& a, double tol) {
    for (const auto& [n, c] : a.coeff) {
        auto it = a.coeff.find(negated(n));
        cd mirror = it == a.coeff.end() ? cd(0, 0) : it->second;
        if (std::abs(mirror - std::conj(c)) > tol) return false;
    }
    return true;
}

}  // namespace vs

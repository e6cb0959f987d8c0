#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "vs/multi_index.hpp"

namespace vs {

inline constexpr double kPi = std::numbers::pi;

// Truncated Dirichlet sine series on [0,1]^d:
//   f(x) = sum_{w in [1,W]^d} c_w prod_i sin(pi w_i x_i).
// The basis functions are kept at unit amplitude; Parseval then reads
// ||f||_{L2}^2 = 2^{-d} sum c_w^2.
struct SineFunction {
    int dim = 1;
    int bandlimit = 1;  // W; support of coeff is contained in [1,W]^dim
    std::map<MultiIndex, double> coeff;

    SineFunction() = default;
    SineFunction(int d, int W) : dim(d), bandlimit(W) {
        if (d < 1) throw std::invalid_argument("SineFunction: dimension must be >= 1");
        if (W < 1) throw std::invalid_argument("SineFunction: bandlimit must be >= 1");
    }
};

inline void set_coeff(SineFunction& f, const MultiIndex& w, double value) {
    if (int(w.size()) != f.dim) throw std::invalid_argument("set_coeff: index dimension mismatch");
    for (int wi : w)
        if (wi < 1 || wi > f.bandlimit) throw std::invalid_argument("set_coeff: index outside [1,W]^d");
    if (!std::isfinite(value)) throw std::invalid_argument("set_coeff: non-finite coefficient");
    if (value == 0.0)
        f.coeff.erase(w);
    else
        f.coeff[w] = value;
}

inline double get_coeff(const SineFunction& f, const MultiIndex& w) {
    auto it = f.coeff.find(w);
    return it == f.coeff.end() ? 0.0 : it->second;
}

// One sine eigenfunction phi_w with unit amplitude.
inline SineFunction sine_mode(const MultiIndex& w, double amplitude = 1.0) {
    int W = 1;
    for (int wi : w) W = std::max(W, wi);
    SineFunction f(int(w.size()), W);
    set_coeff(f, w, amplitude);
    return f;
}

inline double eval_point(const SineFunction& f, const std::vector<double>& x) {
    if (int(x.size()) != f.dim) throw std::invalid_argument("eval_point: point dimension mismatch");
    for (double xi : x)
        if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("eval_point: point outside [0,1]^d");
    double s = 0.0;
    for (const auto& [w, c] : f.coeff) {
        double term = c;
        for (int i = 0; i < f.dim; ++i) term *= std::sin(kPi * w[i] * x[i]);
        s += term;
    }
    return s;
}

// Delta phi_w = -pi^2 ||w||^2 phi_w, applied coefficient-wise.
inline SineFunction laplacian(const SineFunction& f) {
    SineFunction g(f.dim, f.bandlimit);
    for (const auto& [w, c] : f.coeff) {
        double v = -kPi * kPi * l2_squared(w) * c;
        if (v != 0.0) g.coeff[w] = v;
    }
    return g;
}

// (I - Delta)^{-1}: divide each coefficient by 1 + pi^2 ||w||^2.
inline SineFunction precondition(const SineFunction& f) {
    SineFunction g(f.dim, f.bandlimit);
    for (const auto& [w, c] : f.coeff) g.coeff[w] = c / (1.0 + kPi * kPi * l2_squared(w));
    return g;
}

inline double l2_norm(const SineFunction& f) {
    double s = 0.0;
    for (const auto& [w, c] : f.coeff) s += c * c;
    return std::sqrt(std::ldexp(s, -f.dim));
}

inline double h01_norm(const SineFunction& f) {
    double s = 0.0;
    for (const auto& [w, c] : f.coeff) s += kPi * kPi * l2_squared(w) * c * c;
    return std::sqrt(std::ldexp(s, -f.dim));
}

inline double l2_inner(const SineFunction& f, const SineFunction& g) {
    if (f.dim != g.dim) throw std::invalid_argument("l2_inner: dimension mismatch");
    const auto& small = f.coeff.size() <= g.coeff.size() ? f : g;
    const auto& large = f.coeff.size() <= g.coeff.size() ? g : f;
    double s = 0.0;
    for (const auto& [w, c] : small.coeff) {
        auto it = large.coeff.find(w);
        if (it != large.coeff.end()) s += c * it->second;
    }
    return std::ldexp(s, -f.dim);
}

inline double poincare_constant(int d) {
    if (d < 1) throw std::invalid_argument("poincare_constant: d must be >= 1");
    return 1.0 / (kPi * kPi * d);
}

// a*f + b*g over the union of supports; bandlimit is the max of the two.
inline SineFunction axpy(double a, const SineFunction& f, double b, const SineFunction& g) {
    if (f.dim != g.dim) throw std::invalid_argument("axpy: dimension mismatch");
    SineFunction r(f.dim, std::max(f.bandlimit, g.bandlimit));
    for (const auto& [w, c] : f.coeff) r.coeff[w] = a * c;
    for (const auto& [w, c] : g.coeff) {
        double v = (r.coeff.count(w) ? r.coeff[w] : 0.0) + b * c;
        if (v == 0.0)
            r.coeff.erase(w);
        else
            r.coeff[w] = v;
    }
    return r;
}

inline SineFunction scaled(const SineFunction& f, double a) {
    SineFunction r(f.dim, f.bandlimit);
    if (a != 0.0)
        for (const auto& [w, c] : f.coeff) r.coeff[w] = a * c;
    return r;
}

inline SineFunction operator+(const SineFunction& f, const SineFunction& g) { return axpy(1.0, f, 1.0, g); }
inline SineFunction operator-(const SineFunction& f, const SineFunction& g) { return axpy(1.0, f, -1.0, g); }
inline SineFunction operator*(double a, const SineFunction& f) { return scaled(f, a); }

inline double max_coeff_diff(const SineFunction& f, const SineFunction& g) {
    double m = 0.0;
    for (const auto& [w, c] : f.coeff) m = std::max(m, std::abs(c - get_coeff(g, w)));
    for (const auto& [w, c] : g.coeff) m = std::max(m, std::abs(c - get_coeff(f, w)));
    return m;
}

}  // namespace vs

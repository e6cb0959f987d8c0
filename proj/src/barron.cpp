#include "vs/barron.hpp"

#include <cmath>
#include <stdexcept>

namespace vs {

double barron_norm(const TrigPolynomial& a) {
    double s = 0.0;
    for (const auto& [n, c] : a.coeff) s += (1.0 + 0.5 * std::sqrt(l2_squared(n))) * std::abs(c);
    return s;
}

double barron_norm(const SineFunction& f) { return barron_norm(embed_sine_to_trig(f)); }

BarronCertificate certificate_of(const TrigPolynomial& a) {
    BarronCertificate c;
    c.value = barron_norm(a);
    c.bandlimit = std::max(1, lattice_radius(a));
    c.provenance = BarronCertificate::Provenance::computed;
    c.trail.push_back({"computed", {c.value, c.bandlimit}});
    return c;
}

BarronCertificate certificate_of(const SineFunction& f) {
    return certificate_of(embed_sine_to_trig(f));
}

namespace {
BarronCertificate propagated(double value, double W, const char* rule, std::vector<double> inputs,
                             const BarronCertificate& parent) {
    BarronCertificate c;
    c.value = value;
    c.bandlimit = W;
    c.provenance = BarronCertificate::Provenance::propagated;
    c.trail = parent.trail;
    inputs.push_back(value);
    c.trail.push_back({rule, std::move(inputs)});
    return c;
}
}  // namespace

BarronCertificate bound_add(const BarronCertificate& a, const BarronCertificate& b) {
    return propagated(a.value + b.value, std::max(a.bandlimit, b.bandlimit), "add",
                      {a.value, b.value}, a);
}

BarronCertificate bound_mul(const BarronCertificate& a, const BarronCertificate& b) {
    return propagated(a.value * b.value, a.bandlimit + b.bandlimit, "mul", {a.value, b.value}, a);
}

BarronCertificate bound_derivative(const BarronCertificate& a, double W) {
    return propagated(2.0 * kPi * W * a.value, W, "derivative", {a.value, W}, a);
}

BarronCertificate bound_precondition(const BarronCertificate& a) {
    return propagated(a.value, a.bandlimit, "precondition", {a.value}, a);
}

BarronCertificate poly_composition_bound(const std::vector<double>& coeffs, int degree, int dim,
                                         const BarronCertificate& g) {
    if (degree < 0) throw std::invalid_argument("poly_composition_bound: degree must be >= 0");
    double sq = 0.0;
    for (double A : coeffs) sq += A * A;
    const double value = std::pow(double(dim), 0.5 * degree) * std::sqrt(sq) *
                         std::pow(g.value, double(degree));
    return propagated(value, degree * g.bandlimit, "poly_composition",
                      {double(degree), double(dim), g.value}, g);
}

BarronCertificate recursion_bound(const BarronCertificate& u, double f_norm, double eta, int dim,
                                  const AssumptionConstants& k) {
    if (eta < 0.0) throw std::invalid_argument("recursion_bound: eta must be nonnegative");
    const double growth =
        1.0 + eta * (2.0 * kPi * k.k * dim + 1.0) * k.B * std::pow(2.0 * kPi * u.bandlimit, k.p);
    const double value = growth * std::pow(u.value, k.p) + eta * f_norm;
    return propagated(value, 2.0 * kPi * k.k * u.bandlimit, "recursion",
                      {u.value, f_norm, eta, double(dim), k.B, k.p, k.k}, u);
}

double final_norm_bound(int T, double eta, double W0, int dim, double f_norm, double u0_norm,
                        const AssumptionConstants& k) {
    if (T < 0) throw std::invalid_argument("final_norm_bound: T must be >= 0");
    const double base = (1.0 + eta * 2.0 * kPi * k.k * W0 * (2.0 * kPi * k.k * dim + 1.0) * k.B) *
                        (1.0 + eta * f_norm);
    double geom;  // (p^T - 1)/(p - 1), with the p = 1 limit
    if (std::abs(k.p - 1.0) < 1e-12)
        geom = double(T);
    else
        geom = (std::pow(k.p, double(T)) - 1.0) / (k.p - 1.0);
    const double exponent = k.p * double(T) + geom;
    return std::pow(base, exponent) * std::max(1.0, std::pow(u0_norm, std::pow(k.p, double(T))));
}

double rate(double lambda, double Lambda, double Cp) {
    if (!(lambda > 0.0 && lambda <= Lambda)) throw std::invalid_argument("rate: need 0 < lambda <= Lambda");
    if (lambda > 1.0 / Cp) throw std::invalid_argument("rate: normalization lambda <= 1/Cp violated");
    return 1.0 - std::pow(lambda, 6) / (std::pow(1.0 + Cp, 10) * std::pow(Lambda, 5));
}

double step_size(double lambda, double Lambda, double Cp) {
    if (!(lambda > 0.0 && lambda <= Lambda)) throw std::invalid_argument("step_size: need 0 < lambda <= Lambda");
    if (lambda > 1.0 / Cp) throw std::invalid_argument("step_size: normalization lambda <= 1/Cp violated");
    return std::pow(lambda, 4) / (4.0 * std::pow(1.0 + Cp, 7) * std::pow(Lambda, 4));
}

double progress_optimal_step(double lambda, double Lambda, double Cp) {
    if (!(lambda > 0.0 && lambda <= Lambda))
        throw std::invalid_argument("progress_optimal_step: need 0 < lambda <= Lambda");
    return std::pow(lambda, 3) / (std::pow(1.0 + Cp, 7) * std::pow(Lambda, 4));
}

int iteration_count(double eps, double gap0, double lambda, double Lambda, double Cp) {
    if (!(eps > 0.0)) throw std::invalid_argument("iteration_count: eps must be > 0");
    if (!(gap0 > 0.0)) throw std::invalid_argument("iteration_count: gap0 must be > 0");
    const double r = rate(lambda, Lambda, Cp);
    const double t = std::log(2.0 * gap0 / (lambda * eps)) / std::log(1.0 / r);
    return std::max(0, int(std::ceil(t)));
}

double drift_bound(int t, double eps_L, double Lambda, double R, double eta, double Cp) {
    if (t < 0) throw std::invalid_argument("drift_bound: t must be >= 0");
    if (eps_L < 0.0 || Lambda < 0.0 || R < 0.0 || eta < 0.0 || Cp < 0.0)
        throw std::invalid_argument("drift_bound: parameters must be nonnegative");
    if (eps_L == 0.0) return 0.0;
    const double a = 1.0 + eta * (1.0 + Cp) * (1.0 + Cp) * (eps_L + Lambda);
    return eps_L * R / (eps_L + Lambda) * (std::pow(a, double(t)) - 1.0);
}

}  // namespace vs

#pragma once

#include <string>
#include <vector>

#include "vs/trig.hpp"

namespace vs {

// Spectral Barron norm of a lattice polynomial: sum_n (1 + ||n/2||_2) |c_n|.
double barron_norm(const TrigPolynomial& a);
double barron_norm(const SineFunction& f);  // of the exact lattice embedding

struct TrailEntry {
    std::string rule;
    std::vector<double> inputs;
};

// An upper bound on a Barron norm together with the bandlimit it certifies.
// `computed` certificates come from an explicit coefficient sum; propagated
// ones from the algebra rules below, which only ever over-estimate.
struct BarronCertificate {
    double value = 0.0;
    double bandlimit = 1.0;  // W; may stay fractional until attached to a function
    enum class Provenance { computed, propagated } provenance = Provenance::computed;
    std::vector<TrailEntry> trail;
};

BarronCertificate certificate_of(const TrigPolynomial& a);
BarronCertificate certificate_of(const SineFunction& f);

BarronCertificate bound_add(const BarronCertificate& a, const BarronCertificate& b);
BarronCertificate bound_mul(const BarronCertificate& a, const BarronCertificate& b);
BarronCertificate bound_derivative(const BarronCertificate& a, double W);
BarronCertificate bound_precondition(const BarronCertificate& a);

// Composition with a multivariate polynomial of degree <= P:
// value = d^{P/2} sqrt(sum A^2) * g^P, bandlimit = P * W_g.
BarronCertificate poly_composition_bound(const std::vector<double>& coeffs, int degree, int dim,
                                         const BarronCertificate& g);

// Constants of the structured-Lagrangian growth assumption.
struct AssumptionConstants {
    double B = 0.0;    // norm growth factor
    double p = 1.0;    // growth exponent
    double k = 1.0;    // bandlimit growth factor
    double eps = 0.0;  // derivative approximation error (relative to |u(x)|)
    bool verified = false;  // auto-derived for built-in families, user-supplied otherwise
};

// One descent step of the certificate ledger:
// value' = (1 + eta (2 pi k d + 1) B (2 pi W)^p) * value^p + eta * f_norm,
// bandlimit' = 2 pi k W.
BarronCertificate recursion_bound(const BarronCertificate& u, double f_norm, double eta, int dim,
                                  const AssumptionConstants& k);

// Closed-form bound after T steps:
// ((1 + eta 2 pi k W0 (2 pi k d + 1) B)(1 + eta f))^{pT + (p^T-1)/(p-1)} * max(1, u0^{p^T}),
// with the p=1 exponent taken as its limit T.
double final_norm_bound(int T, double eta, double W0, int dim, double f_norm, double u0_norm,
                        const AssumptionConstants& k);

// Per-step energy-gap contraction bound 1 - lambda^6 / ((1+Cp)^10 Lambda^5).
double rate(double lambda, double Lambda, double Cp);

// Fixed step eta = lambda^4 / (4 (1+Cp)^7 Lambda^4).
double step_size(double lambda, double Lambda, double Cp);

// Progress-maximizing step lambda^3 / ((1+Cp)^7 Lambda^4) for the descent's
// provable progress aeta - b eta^2; equals 4*step_size/lambda and is the
// largest step the solver accepts.
double progress_optimal_step(double lambda, double Lambda, double Cp);

// T = ceil( log(2 gap0 / (lambda eps)) / log(1/rate) ).
int iteration_count(double eps, double gap0, double lambda, double Lambda, double Cp);

// Divergence bound between exact and approximate descent sequences:
// (eps_L R / (eps_L + Lambda)) * ((1 + eta (1+Cp)^2 (eps_L + Lambda))^t - 1).
double drift_bound(int t, double eps_L, double Lambda, double R, double eta, double Cp);

}  // namespace vs

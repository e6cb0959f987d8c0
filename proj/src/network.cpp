#include "vs/network.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

namespace vs {

namespace {

struct Ridge {
    MultiIndex n;       // canonical lattice representative
    double amplitude;   // >= 0
    double phase;       // f contains amplitude * cos(pi n.x + phase)
    double weight;      // (1 + ||n/2||) * amplitude
};

bool canonical(const MultiIndex& n) {
    for (int v : n) {
        if (v > 0) return true;
        if (v < 0) return false;
    }
    return true;  // n = 0
}

// Folds a conjugate-symmetric coefficient map into real cosine ridges.
std::vector<Ridge> ridges_of(const TrigPolynomial& f) {
    if (!check_conjugate_symmetry(f, 1e-12))
        throw std::invalid_argument("extract: function must be real-valued (conjugate symmetric)");
    std::vector<Ridge> out;
    for (const auto& [n, c] : f.coeff) {
        if (!canonical(n)) continue;
        const bool isZero = linf(n) == 0;
        const double rho = std::abs(c);
        if (rho == 0.0) continue;
        Ridge r;
        r.n = n;
        r.amplitude = isZero ? rho : 2.0 * rho;
        r.phase = std::atan2(c.imag(), c.real());
        r.weight = (1.0 + 0.5 * std::sqrt(l2_squared(n))) * r.amplitude;
        out.push_back(std::move(r));
    }
    return out;
}

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

double logistic(double s) { return 1.0 / (1.0 + std::exp(-s)); }
double relu_sigmoidal(double s) { return std::min(1.0, std::max(0.0, s)); }

// Least-squares fit of cos(s) on [lo, hi] by an 8-term stencil
// gamma_m sigma(alpha (s - tau_m)); sup error on the fitting grid reported.
struct Stencil {
    std::array<double, 8> tau;
    std::array<double, 8> gamma;
    double alpha;
    double supError;
};

Stencil fit_stencil(double lo, double hi, bool relu) {
    const int m = 8, grid = 257;
    Stencil st;
    const double span = hi - lo;
    st.alpha = 16.0 / std::max(span, 1e-9);
    for (int i = 0; i < m; ++i) st.tau[i] = lo + (i + 0.5) * span / m;
    Eigen::MatrixXd A(grid, m);
    Eigen::VectorXd y(grid);
    for (int g = 0; g < grid; ++g) {
        const double s = lo + span * g / (grid - 1);
        for (int i = 0; i < m; ++i) {
            const double arg = st.alpha * (s - st.tau[i]);
            A(g, i) = relu ? relu_sigmoidal(arg) : logistic(arg);
        }
        y(g) = std::cos(s);
    }
    Eigen::VectorXd gamma = (A.transpose() * A + 1e-10 * Eigen::MatrixXd::Identity(m, m))
                                .ldlt()
                                .solve(A.transpose() * y);
    for (int i = 0; i < m; ++i) st.gamma[i] = gamma(i);
    st.supError = (A * gamma - y).cwiseAbs().maxCoeff();
    return st;
}

}  // namespace

TwoLayerNetwork extract(const TrigPolynomial& f, int k, std::uint64_t seed,
                        TwoLayerNetwork::Activation act) {
    if (k < 1) throw std::invalid_argument("extract: width k must be >= 1");
    auto ridges = ridges_of(f);
    if (ridges.empty()) throw std::invalid_argument("extract: zero function has nothing to sample");

    double C = 0.0;
    for (const auto& r : ridges) C += r.weight;
    std::vector<double> cdf(ridges.size());
    double acc = 0.0;
    for (size_t i = 0; i < ridges.size(); ++i) {
        acc += ridges[i].weight / C;
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    std::mt19937_64 rng(seed);
    TwoLayerNetwork net;
    net.k = k;
    net.activation = act;
    net.sourceNorm = C;
    for (int i = 0; i < k; ++i) {
        const double u = uniform01(rng);
        size_t pick = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        if (pick >= ridges.size()) pick = ridges.size() - 1;
        const Ridge& r = ridges[pick];
        const double weight = C / (k * (1.0 + 0.5 * std::sqrt(l2_squared(r.n))));

        Eigen::VectorXd a(f.dim);
        for (int j = 0; j < f.dim; ++j) a(j) = kPi * r.n[j];
        if (act == TwoLayerNetwork::Activation::cosine) {
            net.units.push_back({a, r.phase, weight});
        } else {
            // argument range of the ridge over the cube
            double lo = r.phase, hi = r.phase;
            for (int j = 0; j < f.dim; ++j) {
                if (a(j) > 0) hi += a(j);
                else lo += a(j);
            }
            // the sampled unit reproduces weight * cos(s) with s = a.x + phase
            Stencil st = fit_stencil(lo, hi, act == TwoLayerNetwork::Activation::reluSigmoidal);
            net.stencilSupError = std::max(net.stencilSupError, weight * st.supError);
            for (int m = 0; m < 8; ++m)
                net.units.push_back({st.alpha * a, st.alpha * (r.phase - st.tau[m]),
                                     weight * st.gamma[m]});
        }
    }
    return net;
}

double eval_network(const TwoLayerNetwork& net, const std::vector<double>& x) {
    double s = 0.0;
    for (const auto& u : net.units) {
        double arg = u.b;
        for (Eigen::Index j = 0; j < u.a.size(); ++j) arg += u.a(j) * x[size_t(j)];
        switch (net.activation) {
            case TwoLayerNetwork::Activation::cosine: s += u.c * std::cos(arg); break;
            case TwoLayerNetwork::Activation::sigmoid: s += u.c * logistic(arg); break;
            case TwoLayerNetwork::Activation::reluSigmoidal: s += u.c * relu_sigmoidal(arg); break;
        }
    }
    return s;
}

double mse(const TwoLayerNetwork& net, const TrigPolynomial& fRef, int nQuadrature) {
    const int d = fRef.dim;
    std::vector<int> idx(d, 0);
    std::vector<double> x(d);
    double acc = 0.0;
    Eigen::Index count = 0;
    while (true) {
        for (int i = 0; i < d; ++i) x[i] = (idx[i] + 0.5) / nQuadrature;
        const double diff = eval_network(net, x) - eval_trig(fRef, x).real();
        acc += diff * diff;
        ++count;
        int axis = d - 1;
        while (axis >= 0 && ++idx[axis] == nQuadrature) idx[axis--] = 0;
        if (axis < 0) break;
    }
    return acc / double(count);
}

double weight_budget(const TwoLayerNetwork& net) {
    double s = 0.0;
    for (const auto& u : net.units) s += std::abs(u.c);
    return s;
}

}  // namespace vs

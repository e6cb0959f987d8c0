#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "vs/barron.hpp"

namespace vs {

// Two-layer network  f_k(x) = sum_i c_i act(a_i . x + b_i).
// cosine units reproduce trigonometric ridges exactly; the sigmoidal modes
// compile each cosine ridge into a fixed 8-term stencil of sigmoidal bumps
// fitted on the ridge's argument range (sup error recorded per network).
struct TwoLayerNetwork {
    enum class Activation { cosine, sigmoid, reluSigmoidal };

    struct Unit {
        Eigen::VectorXd a;
        double b = 0.0;
        double c = 0.0;
    };

    int k = 0;  // requested width (number of sampled ridges)
    Activation activation = Activation::cosine;
    std::vector<Unit> units;      // k units (cosine) or 8k units (sigmoidal modes)
    double sourceNorm = 0.0;      // Barron norm C of the sampled function
    double stencilSupError = 0.0; // worst per-ridge stencil sup error (sigmoidal modes)
};

// Importance-samples k ridges with probability proportional to
// (1 + ||n/2||) |amplitude| and weights of magnitude C / (k (1 + ||n/2||)),
// so cosine units satisfy sum |c_i| <= C <= 2C.  The sigmoidal modes trade
// that budget for realizability: their stencil weights carry larger mass.
// Deterministic for a fixed (f, k, seed).
TwoLayerNetwork extract(const TrigPolynomial& f, int k, std::uint64_t seed,
                        TwoLayerNetwork::Activation act = TwoLayerNetwork::Activation::cosine);

double eval_network(const TwoLayerNetwork& net, const std::vector<double>& x);

// Mean squared error against the reference on an n^d midpoint tensor grid
// (uniform measure on the cube).
double mse(const TwoLayerNetwork& net, const TrigPolynomial& fRef, int nQuadrature);

double weight_budget(const TwoLayerNetwork& net);  // sum |c_i|

}  // namespace vs

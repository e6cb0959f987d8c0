#pragma once

#include <Eigen/Core>
#include <vector>

#include "vs/sine.hpp"

namespace vs {

// Nodal values at the M^d interior points x_j = j/(M+1), j = 1..M, stored
// row-major (last axis fastest).
struct GridFunction {
    int dim = 1;
    int pointsPerAxis = 1;  // M
    Eigen::VectorXd values;

    GridFunction() = default;
    GridFunction(int d, int M) : dim(d), pointsPerAxis(M) {
        values = Eigen::VectorXd::Zero(flat_size(d, M));
    }
    static Eigen::Index flat_size(int d, int M) {
        Eigen::Index n = 1;
        for (int i = 0; i < d; ++i) n *= M;
        return n;
    }
};

GridFunction to_grid(const SineFunction& f, int M);
SineFunction from_grid(const GridFunction& g, int W);

// Samples of d_j f at the interior nodes, one GridFunction per axis,
// computed by exact term-wise differentiation of the basis.
std::vector<GridFunction> gradient_on_grid(const SineFunction& f, int M);

// Extended tensor grid including the boundary ring: per axis the M+2 nodes
// j/(M+1), j = 0..M+1.  Used for quadrature of integrands that do not vanish
// on the boundary (gradient terms).
struct ExtendedGrid {
    int dim = 1;
    int M = 1;                 // interior points per axis; M+2 nodes per axis
    Eigen::VectorXd values;    // (M+2)^dim, row-major
};

ExtendedGrid sample_extended(const SineFunction& f, int M);
std::vector<ExtendedGrid> sample_gradient_extended(const SineFunction& f, int M);

// Trapezoid quadrature of an extended-grid field over [0,1]^d.
double integrate(const ExtendedGrid& g);

// Tensor-product projections of an extended-grid field onto the sine box
// [1,W]^d under trapezoid quadrature.  project_sine returns the raw inner
// products <F, phi_w>; project_dsine uses d_j phi_w in place of phi_w.
Eigen::VectorXd project_sine(const ExtendedGrid& F, int W);
Eigen::VectorXd project_dsine(const ExtendedGrid& F, int W, int axis);

}  // namespace vs

#pragma once

#include "vs/lagrangian.hpp"
#include "vs/solver.hpp"

namespace vs {

// Finite-difference energy minimization on the interior nodes of a uniform
// N^d grid (d <= 2), Dirichlet zeros on the boundary ring enforced
// structurally.  Serves as a brute-force reference for the spectral solver.
struct FDProblem {
    int dim = 1;           // <= 2
    int N = 16;            // interior nodes per axis, >= 16
    Eigen::VectorXd f;     // nodal values of the source at interior nodes, row-major
    LagrangianSpec spec;
};

struct FDResult {
    Eigen::VectorXd u;        // nodal minimizer
    int iterations = 0;
    double residualInf = 0.0; // final discrete PDE residual, inf-norm
    bool converged = false;
};

FDResult fd_minimize(const FDProblem& p, double tol, int maxIterations = 60);

// Discrete energy of nodal values under the same central-difference scheme.
double fd_energy(const FDProblem& p, const Eigen::VectorXd& u);

// Samples a SineFunction at the interior nodes of the oracle grid.
Eigen::VectorXd fd_sample(const SineFunction& g, int N);

// Max pointwise discrepancy between trig_multiply(a,b) and the product of
// plain evaluations on an M^d sample grid.
double dense_product_check(const TrigPolynomial& a, const TrigPolynomial& b, int M);

struct GoldenProblem {
    std::string name;
    LagrangianSpec spec;
    SineFunction f;
    SineFunction uStar;
    double EStar = 0.0;
};

// Registered closed-form instances: poisson_1d, poisson_2d, helmholtz_2d.
GoldenProblem golden(const std::string& name);
std::vector<std::string> golden_names();

}  // namespace vs

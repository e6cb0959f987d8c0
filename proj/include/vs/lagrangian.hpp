#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>

#include "vs/barron.hpp"

namespace vs {

// Monomial A * y^yExp * prod_j z_j^zExp[j] of the integrand seen as a
// polynomial in (y, z) = (u, grad u).
struct Monomial {
    int yExp = 0;
    std::vector<int> zExp;  // size d
    double A = 0.0;
};

// Sample box for convexity certification: |y| <= yAbs, |z_j| <= zAbs.
struct ValueBox {
    double yAbs = 1.0;
    double zAbs = 1.0;
};

// The integrand L(x, y, z) with analytic first derivatives and Hessian in
// (y, z), plus its certified convexity constants.  Evaluators must be pure;
// construction subtracts the value and gradient at (y,z) = 0 so that
// L(x,0,0) = 0 and grad L(x,0,0) = 0.
struct LagrangianSpec {
    using Vec = Eigen::VectorXd;
    using Mat = Eigen::MatrixXd;

    int dim = 1;
    std::string name;
    std::function<double(const Vec& x, double y, const Vec& z)> value;
    std::function<double(const Vec& x, double y, const Vec& z)> dy;   // d/du L
    std::function<Vec(const Vec& x, double y, const Vec& z)> dz;      // grad_z L
    std::function<Mat(const Vec& x, double y, const Vec& z)> hessian; // (d+1)x(d+1), (y,z) order
    double lambda = 1.0;
    double Lambda = 1.0;
    ValueBox box;
    std::optional<AssumptionConstants> constants;
    std::vector<Monomial> terms;  // empty for non-polynomial custom specs
};

// Quadratic integrand (1/2) z^T A z + (1/2) c y^2.  A must be symmetric with
// positive eigenvalues; c must lie in [0, Lambda].
LagrangianSpec linear_elliptic(const Eigen::MatrixXd& A, double c);

// Coefficient-field variant (1/2) z^T A(x) z + (1/2) c(x) y^2.  The
// eigenvalue window and the sign of c are checked on an nGrid^d sample grid
// and determine (lambda, Lambda); growth constants are left unverified.
LagrangianSpec linear_elliptic(int dim,
                               const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& A,
                               const std::function<double(const Eigen::VectorXd&)>& c,
                               int nGrid = 9);

// Polynomial integrand sum A_alpha y^a z^b with total degree <= P.  The
// Hessian sandwich is certified on the given box (grid plus random samples);
// a violation is rejected, reporting the offending point.  wRef is the
// bandlimit cap of the runs the assumption constants should cover.
LagrangianSpec polynomial_lagrangian(int dim, const std::vector<Monomial>& terms,
                                     const ValueBox& box, double wRef = 16.0);

struct ConvexityEstimate {
    double lambdaHat = 0.0;
    double LambdaHat = 0.0;
    Eigen::VectorXd argminSample;  // (y, z) achieving lambdaHat
    Eigen::VectorXd argmaxSample;  // (y, z) achieving LambdaHat
};

// lambdaHat = min over samples of the smallest eigenvalue of the z-block,
// LambdaHat = max over samples of the largest Hessian eigenvalue.
ConvexityEstimate estimate_convexity(const LagrangianSpec& spec, const ValueBox& box,
                                     int nSamples);

// Largest relative derivative discrepancy sup |dL - dL~| / |y| over the
// sample set; samples with y = 0 must have zero discrepancy (else +inf).
double approximate_pair(const LagrangianSpec& exact, const LagrangianSpec& approx,
                        const std::vector<std::pair<double, Eigen::VectorXd>>& samples);

// Built-in quartic family (1/2)||z||^2 + (1/2) y^2 + (1/4) y^4 on the box.
LagrangianSpec quartic_lagrangian(int dim, const ValueBox& box, double wRef = 16.0);
// Its quadratic truncation (1/2)||z||^2 + (1/2) y^2.
LagrangianSpec quartic_truncation(int dim, const ValueBox& box, double wRef = 16.0);

}  // namespace vs

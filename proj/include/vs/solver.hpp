#pragma once

#include <optional>

#include "vs/grid.hpp"
#include "vs/lagrangian.hpp"

namespace vs {

struct SolverConfig {
    std::optional<double> eta;  // default: progress_optimal_step(lambda, Lambda, Cp)
    int Wmax = 8;
    int gridFactor = 4;
    std::optional<int> gridM;  // default: gridFactor * max(Wmax, W_f, W_u0)

    enum class Stop { fixedT, tolerance } stop = Stop::fixedT;
    // Retained band per step: the full [1, Wmax] box, or a band grown from
    // the current support by the integrand's bandlimit factor (still capped).
    enum class Growth { cap, scheduled } growth = Growth::cap;
    double epsilon = 1e-3;
    double gap0 = 1.0;  // assumed initial energy gap for the fixed-T schedule
    std::optional<int> T;
    double h1IncrementTol = 1e-10;
    int maxIterations = 20000;

    std::optional<double> referenceEnergy;          // E(u*), when known
    std::optional<SineFunction> referenceSolution;  // u*, when known
};

struct IterateRecord {
    int t = 0;
    double energy = 0.0;
    double gap = std::numeric_limits<double>::quiet_NaN();
    double h1Error = std::numeric_limits<double>::quiet_NaN();
    double contraction = std::numeric_limits<double>::quiet_NaN();
    double barronComputed = 0.0;
    double barronBound = std::numeric_limits<double>::quiet_NaN();
    int W = 0;  // support radius actually used by the iterate
    double truncationResidual = 0.0;
    double drift = 0.0;
    double driftBound = 0.0;
};

struct ConvergenceReport {
    std::vector<IterateRecord> rows;
    int iterationsUsed = 0;
    double etaUsed = 0.0;
    double theoreticalRate = 0.0;   // stated per-step gap bound
    double finalEnergy = 0.0;
    double finalGap = std::numeric_limits<double>::quiet_NaN();
    double finalH1Error = std::numeric_limits<double>::quiet_NaN();
    double h1ErrorBoundFromGap = std::numeric_limits<double>::quiet_NaN();  // sqrt(2 gap / lambda)
    double ledgerFinalBound = std::numeric_limits<double>::quiet_NaN();
    bool stoppedByTolerance = false;
    std::optional<BarronCertificate> ledger;  // final certificate with its trail
    bool ledgerVerified = false;  // growth constants derived, not user-asserted
};

struct PairReport {
    ConvergenceReport exact;
    ConvergenceReport approx;
    std::vector<double> drift;       // ||u_t - u~_t||_{H01}
    std::vector<double> driftBounds; // drift_bound(t, ...)
    double epsHat = 0.0;
    double R = 0.0;  // measured sup_t ||u_t||_{H01} on the exact run
};

// Trapezoid quadrature of L(x, u, grad u) - f u over the unit cube.
double energy(const LagrangianSpec& spec, const SineFunction& u, const SineFunction& f, int M,
              int gridFactor = 4);

// Weak-form assembly: the bandlimit-W projection g with
// <g, phi_w>_{L2} = int grad_z L . grad phi_w + d_u L phi_w - f phi_w dx.
SineFunction functional_gradient(const LagrangianSpec& spec, const SineFunction& u,
                                 const SineFunction& f, int M, int W, int gridFactor = 4);

// u - eta (I - Delta)^{-1} (DE(u) - f), projected to the config bandlimit.
SineFunction pgd_step(const LagrangianSpec& spec, const SineFunction& u, const SineFunction& f,
                      const SolverConfig& config);

std::pair<SineFunction, ConvergenceReport> solve(const LagrangianSpec& spec, const SineFunction& f,
                                                 const SineFunction& u0, const SolverConfig& config);

// Runs the exact and approximate integrands side by side with a shared step
// size and reports the measured divergence against drift_bound.
PairReport solve_pair(const LagrangianSpec& specExact, const LagrangianSpec& specApprox,
                      const SineFunction& f, const SineFunction& u0, const SolverConfig& config);

}  // namespace vs

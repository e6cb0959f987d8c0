#include "vs/solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vs {

namespace {

using Vec = Eigen::VectorXd;

int support_radius(const SineFunction& u) {
    int r = 0;
    for (const auto& [w, c] : u.coeff) r = std::max(r, linf(w));
    return r;
}

struct SampledIterate {
    ExtendedGrid u;
    std::vector<ExtendedGrid> grad;
};

SampledIterate sample_iterate(const SineFunction& u, int M) {
    return {sample_extended(u, M), sample_gradient_extended(u, M)};
}

// Walks the extended tensor grid, handing each node's flat offset and
// coordinates to fn.
void for_each_node(int dim, int M, const std::function<void(Eigen::Index, const Vec&)>& fn) {
    const int n = M + 2;
    std::vector<int> idx(dim, 0);
    Vec x(dim);
    const double h = 1.0 / (M + 1);
    Eigen::Index flat = 0;
    while (true) {
        for (int i = 0; i < dim; ++i) x(i) = idx[i] * h;
        fn(flat, x);
        int a = dim - 1;
        while (a >= 0 && ++idx[a] == n) idx[a--] = 0;
        if (a < 0) break;
        ++flat;
    }
}

void check_alias_guard(const char* who, int M, int gridFactor, int W) {
    if (M < gridFactor * W) {
        std::ostringstream os;
        os << who << ": aliasing guard M >= " << gridFactor << "*W violated (M=" << M
           << ", W=" << W << ")";
        throw std::invalid_argument(os.str());
    }
}

struct GradientAssembly {
    SineFunction g;
    double truncationResidual = 0.0;
};

GradientAssembly assemble_gradient(const LagrangianSpec& spec, const SineFunction& u,
                                   const SineFunction& f, int M, int W, bool wantResidual) {
    const int d = spec.dim;
    SampledIterate s = sample_iterate(u, M);
    ExtendedGrid F = sample_extended(f, M);

    ExtendedGrid Pu;
    Pu.dim = d;
    Pu.M = M;
    Pu.values.resize(F.values.size());
    std::vector<ExtendedGrid> Pz(d);
    for (int j = 0; j < d; ++j) {
        Pz[j].dim = d;
        Pz[j].M = M;
        Pz[j].values.resize(F.values.size());
    }
    Vec z(d);
    bool bad = false;
    for_each_node(d, M, [&](Eigen::Index o, const Vec& x) {
        const double y = s.u.values(o);
        for (int j = 0; j < d; ++j) z(j) = s.grad[j].values(o);
        const double py = spec.dy(x, y, z) - F.values(o);
        const Vec pz = spec.dz(x, y, z);
        if (!std::isfinite(py) || !pz.allFinite()) bad = true;
        Pu.values(o) = py;
        for (int j = 0; j < d; ++j) Pz[j].values(o) = pz(j);
    });
    if (bad) throw std::runtime_error("functional_gradient: non-finite nonlinearity value");

    const int Wfull = wantResidual ? M : W;
    Eigen::VectorXd b = project_sine(Pu, Wfull);
    for (int j = 0; j < d; ++j) b += project_dsine(Pz[j], Wfull, j);
    const double scale = std::ldexp(1.0, d);  // 1 / ||phi_w||_{L2}^2

    GradientAssembly out;
    out.g = SineFunction(d, W);
    const double floor = 1e-14 * scale * b.cwiseAbs().maxCoeff();  // quadrature round-off
    double keep2 = 0.0, all2 = 0.0;
    for_each_index(d, 1, Wfull, [&](const MultiIndex& w) {
        Eigen::Index off = 0;
        for (int i = 0; i < d; ++i) off = off * Wfull + (w[i] - 1);
        const double c = scale * b(off);
        if (std::abs(c) <= floor) return;
        all2 += c * c;
        if (linf(w) <= W) {
            out.g.coeff[w] = c;
            keep2 += c * c;
        }
    });
    out.truncationResidual = std::sqrt(std::ldexp(std::max(0.0, all2 - keep2), -d));
    return out;
}

void check_box(const LagrangianSpec& spec, const SampledIterate& s) {
    const double yMax = s.u.values.cwiseAbs().maxCoeff();
    if (yMax > spec.box.yAbs) {
        std::ostringstream os;
        os << "solve: iterate escaped the certified value box (|u| up to " << yMax << " > "
           << spec.box.yAbs << ")";
        throw std::runtime_error(os.str());
    }
    for (const auto& gj : s.grad) {
        const double zMax = gj.values.cwiseAbs().maxCoeff();
        if (zMax > spec.box.zAbs) {
            std::ostringstream os;
            os << "solve: iterate gradient escaped the certified value box (" << zMax << " > "
               << spec.box.zAbs << ")";
            throw std::runtime_error(os.str());
        }
    }
}

int default_grid(const SolverConfig& cfg, const SineFunction& f, const SineFunction& u0) {
    if (cfg.gridM) return *cfg.gridM;
    int W = std::max({cfg.Wmax, f.bandlimit, u0.bandlimit});
    return cfg.gridFactor * W;
}

}  // namespace

double energy(const LagrangianSpec& spec, const SineFunction& u, const SineFunction& f, int M,
              int gridFactor) {
    if (u.dim != spec.dim || f.dim != spec.dim) throw std::invalid_argument("energy: dimension mismatch");
    check_alias_guard("energy", M, gridFactor, std::max(support_radius(u), support_radius(f)));
    const int d = spec.dim;
    SampledIterate s = sample_iterate(u, M);
    ExtendedGrid F = sample_extended(f, M);
    ExtendedGrid integrand;
    integrand.dim = d;
    integrand.M = M;
    integrand.values.resize(F.values.size());
    Vec z(d);
    for_each_node(d, M, [&](Eigen::Index o, const Vec& x) {
        const double y = s.u.values(o);
        for (int j = 0; j < d; ++j) z(j) = s.grad[j].values(o);
        integrand.values(o) = spec.value(x, y, z) - F.values(o) * y;
    });
    if (!integrand.values.allFinite()) throw std::runtime_error("energy: non-finite integrand");
    return integrate(integrand);
}

SineFunction functional_gradient(const LagrangianSpec& spec, const SineFunction& u,
                                 const SineFunction& f, int M, int W, int gridFactor) {
    if (u.dim != spec.dim || f.dim != spec.dim)
        throw std::invalid_argument("functional_gradient: dimension mismatch");
    check_alias_guard("functional_gradient", M, gridFactor, support_radius(u));
    return assemble_gradient(spec, u, f, M, W, false).g;
}

SineFunction pgd_step(const LagrangianSpec& spec, const SineFunction& u, const SineFunction& f,
                      const SolverConfig& config) {
    const int M = default_grid(config, f, u);
    SineFunction g = functional_gradient(spec, u, f, M, config.Wmax, config.gridFactor);
    const double eta = config.eta.value_or(
        progress_optimal_step(spec.lambda, spec.Lambda, poincare_constant(spec.dim)));
    return axpy(1.0, u, -eta, precondition(g));
}

std::pair<SineFunction, ConvergenceReport> solve(const LagrangianSpec& spec, const SineFunction& f,
                                                 const SineFunction& u0, const SolverConfig& config) {
    const int d = spec.dim;
    if (f.dim != d || u0.dim != d) throw std::invalid_argument("solve: dimension mismatch");
    if (support_radius(f) > config.Wmax || support_radius(u0) > config.Wmax)
        throw std::invalid_argument("solve: Wmax must cover the bandlimits of f and u0");
    const double Cp = poincare_constant(d);
    const double etaMax = progress_optimal_step(spec.lambda, spec.Lambda, Cp);
    const double eta = config.eta.value_or(etaMax);
    if (!(eta > 0.0) || eta > etaMax * (1.0 + 1e-12))
        throw std::invalid_argument("solve: eta must lie in (0, lambda^3/((1+Cp)^7 Lambda^4)]");
    const int M = default_grid(config, f, u0);
    check_alias_guard("solve", M, config.gridFactor, std::max({config.Wmax, support_radius(f), support_radius(u0)}));

    ConvergenceReport rep;
    rep.etaUsed = eta;
    rep.theoreticalRate = rate(spec.lambda, spec.Lambda, Cp);

    int T;
    if (config.stop == SolverConfig::Stop::fixedT) {
        T = config.T ? *config.T
                     : iteration_count(config.epsilon, config.gap0, spec.lambda, spec.Lambda, Cp);
    } else {
        T = config.T ? *config.T : config.maxIterations;
    }

    // Certificate ledger.  The chain starts at max(1, ||u0||_B) and carries
    // the lattice radius of the data as its bandlimit.
    const double fNorm = barron_norm(f);
    const bool haveLedger = spec.constants.has_value();
    BarronCertificate cert;
    if (haveLedger) {
        cert = certificate_of(u0);
        cert.value = std::max(1.0, cert.value);
        cert.bandlimit = std::max({1.0, cert.bandlimit, double(support_radius(f))});
    }

    SineFunction u = u0;
    double prevEnergy = std::numeric_limits<double>::quiet_NaN();
    double prevGap = std::numeric_limits<double>::quiet_NaN();
    for (int t = 0;; ++t) {
        SampledIterate s = sample_iterate(u, M);
        check_box(spec, s);

        IterateRecord row;
        row.t = t;
        row.energy = energy(spec, u, f, M, config.gridFactor);
        if (std::isfinite(prevEnergy) && row.energy > prevEnergy + 1e-12 * (1.0 + std::abs(prevEnergy))) {
            std::ostringstream os;
            os << "solve: energy increased at step " << t << " (" << prevEnergy << " -> "
               << row.energy << "); eta=" << eta;
            throw std::runtime_error(os.str());
        }
        if (config.referenceEnergy) {
            row.gap = row.energy - *config.referenceEnergy;
            if (std::isfinite(prevGap) && prevGap > 0.0) row.contraction = row.gap / prevGap;
        }
        if (config.referenceSolution) row.h1Error = h01_norm(u - *config.referenceSolution);
        row.barronComputed = barron_norm(u);
        if (haveLedger) row.barronBound = cert.value;
        row.W = support_radius(u);

        const bool last = (t >= T);
        double h1inc = std::numeric_limits<double>::infinity();
        if (!last) {
            int Wproj = config.Wmax;
            if (config.growth == SolverConfig::Growth::scheduled) {
                const double k = spec.constants ? spec.constants->k : 1.0;
                const int grown = int(std::ceil(2.0 * kPi * k * std::max(1, support_radius(u))));
                Wproj = std::min(config.Wmax, std::max({grown, support_radius(f), 1}));
            }
            GradientAssembly ga = assemble_gradient(spec, u, f, M, Wproj, true);
            row.truncationResidual = ga.truncationResidual;
            SineFunction next = axpy(1.0, u, -eta, precondition(ga.g));
            h1inc = h01_norm(next - u);
            rep.rows.push_back(row);
            prevEnergy = row.energy;
            prevGap = row.gap;
            u = std::move(next);
            if (haveLedger) {
                BarronCertificate floored = cert;
                floored.value = std::max(1.0, cert.value);
                cert = recursion_bound(floored, fNorm, eta, d, *spec.constants);
            }
            if (h1inc < config.h1IncrementTol) {  // whichever stop comes first
                rep.stoppedByTolerance = true;
                // record the final iterate and exit
                IterateRecord fin = row;
                fin.t = t + 1;
                fin.energy = energy(spec, u, f, M, config.gridFactor);
                fin.gap = config.referenceEnergy ? fin.energy - *config.referenceEnergy
                                                 : std::numeric_limits<double>::quiet_NaN();
                fin.contraction = (std::isfinite(row.gap) && row.gap > 0.0) ? fin.gap / row.gap
                                                                            : std::numeric_limits<double>::quiet_NaN();
                fin.h1Error = config.referenceSolution
                                  ? h01_norm(u - *config.referenceSolution)
                                  : std::numeric_limits<double>::quiet_NaN();
                fin.barronComputed = barron_norm(u);
                if (haveLedger) fin.barronBound = cert.value;
                fin.W = support_radius(u);
                fin.truncationResidual = 0.0;
                rep.rows.push_back(fin);
                break;
            }
        } else {
            rep.rows.push_back(row);
            break;
        }
    }

    const IterateRecord& lastRow = rep.rows.back();
    rep.iterationsUsed = lastRow.t;
    rep.finalEnergy = lastRow.energy;
    rep.finalGap = lastRow.gap;
    rep.finalH1Error = lastRow.h1Error;
    if (std::isfinite(lastRow.gap) && lastRow.gap >= 0.0)
        rep.h1ErrorBoundFromGap = std::sqrt(2.0 * lastRow.gap / spec.lambda);
    if (haveLedger) {
        rep.ledgerFinalBound = lastRow.barronBound;
        rep.ledger = cert;
        rep.ledgerVerified = spec.constants->verified;
    }
    return {u, rep};
}

PairReport solve_pair(const LagrangianSpec& specExact, const LagrangianSpec& specApprox,
                      const SineFunction& f, const SineFunction& u0, const SolverConfig& config) {
    if (specExact.dim != specApprox.dim) throw std::invalid_argument("solve_pair: dimension mismatch");
    const int d = specExact.dim;
    const double Cp = poincare_constant(d);
    // Shared step inside the range the drift bound is stated for.
    const double etaShared =
        config.eta.value_or(std::min(step_size(specExact.lambda, specExact.Lambda, Cp),
                                     step_size(specApprox.lambda, specApprox.Lambda, Cp)));
    SolverConfig c = config;
    c.eta = etaShared;

    // Derivative discrepancy certified on the sample box of the exact spec.
    std::vector<std::pair<double, Eigen::VectorXd>> samples;
    {
        const int n = 41;
        for (int i = 0; i < n; ++i) {
            double y = specExact.box.yAbs * (2.0 * i / (n - 1) - 1.0);
            for (int j = 0; j < n; ++j) {
                Eigen::VectorXd z =
                    Eigen::VectorXd::Constant(d, specExact.box.zAbs * (2.0 * j / (n - 1) - 1.0));
                samples.push_back({y, z});
            }
        }
    }
    const double epsHat = approximate_pair(specExact, specApprox, samples);
    if (!(epsHat < specExact.lambda))
        throw std::invalid_argument("solve_pair: derivative discrepancy must stay below lambda");

    PairReport out;
    out.epsHat = epsHat;
    auto [uT, repExact] = solve(specExact, f, u0, c);
    auto [vT, repApprox] = solve(specApprox, f, u0, c);
    (void)uT;
    (void)vT;
    out.exact = repExact;
    out.approx = repApprox;

    // Replaying both trajectories for the drift series.
    const int T = std::min(repExact.iterationsUsed, repApprox.iterationsUsed);
    SineFunction u = u0, v = u0;
    const int M = default_grid(c, f, u0);
    double R = h01_norm(u0);
    std::vector<SineFunction> exactIterates{u};
    for (int t = 0; t < T; ++t) {
        u = axpy(1.0, u, -etaShared,
                 precondition(functional_gradient(specExact, u, f, M, c.Wmax, c.gridFactor)));
        R = std::max(R, h01_norm(u));
        exactIterates.push_back(u);
    }
    out.R = R;
    const double LambdaMax = std::max(specExact.Lambda, specApprox.Lambda);
    for (int t = 0; t <= T; ++t) {
        out.drift.push_back(h01_norm(exactIterates[t] - v));
        out.driftBounds.push_back(drift_bound(t, epsHat, LambdaMax, R, etaShared, Cp));
        if (t < T)
            v = axpy(1.0, v, -etaShared,
                     precondition(functional_gradient(specApprox, v, f, M, c.Wmax, c.gridFactor)));
    }
    for (size_t i = 0; i < out.exact.rows.size() && i < out.drift.size(); ++i) {
        out.exact.rows[i].drift = out.drift[i];
        out.exact.rows[i].driftBound = out.driftBounds[i];
    }
    return out;
}

}  // namespace vs

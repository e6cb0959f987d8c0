#include "vs/oracle.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <stdexcept>

namespace vs {

namespace {

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

struct FDWork {
    int d, N;
    double h;
    Eigen::Index size;

    Eigen::Index flat(int i, int j) const { return Eigen::Index(i - 1) * N + (j - 1); }
    Eigen::Index flat(int i) const { return i - 1; }
};

double node_value(const Vec& u, const FDWork& w, int i, int j = 1) {
    // zero on and outside the boundary ring
    if (i < 1 || i > w.N) return 0.0;
    if (w.d == 2 && (j < 1 || j > w.N)) return 0.0;
    return w.d == 1 ? u(w.flat(i)) : u(w.flat(i, j));
}

// Forward difference along axis at node (i[,j]); the energy sums these over
// i = 0..N per axis, so every interior edge is covered once and the compact
// 3/5-point stencils fall out of the stationarity conditions.
double forward(const Vec& u, const FDWork& w, int i, int j, int axis) {
    if (w.d == 1) return (node_value(u, w, i + 1) - node_value(u, w, i)) / w.h;
    if (axis == 0) return (node_value(u, w, i + 1, j) - node_value(u, w, i, j)) / w.h;
    return (node_value(u, w, i, j + 1) - node_value(u, w, i, j)) / w.h;
}

Vec coords(const FDWork& w, int i, int j) {
    Vec x(w.d);
    x(0) = i * w.h;
    if (w.d == 2) x(1) = j * w.h;
    return x;
}

// Discrete energy gradient w.r.t. nodal values, scaled by h^{-d} so it reads
// as the pointwise PDE residual  -div(grad_z L) + d_u L - f.
Vec fd_residual(const FDProblem& p, const FDWork& w, const Vec& u) {
    const int N = w.N;
    Vec g = Vec::Zero(w.size);
    Vec z(w.d);
    for (int i = 0; i <= N; ++i) {
        const int jmax = w.d == 2 ? N : 0;
        for (int j = 0; j <= jmax; ++j) {
            for (int a = 0; a < w.d; ++a) z(a) = forward(u, w, i, j, a);
            const double y = node_value(u, w, i, j);
            const Vec x = coords(w, i, j);
            const double dy = p.spec.dy(x, y, z);
            const Vec dz = p.spec.dz(x, y, z);
            auto add = [&](int ii, int jj, double v) {
                if (ii < 1 || ii > N) return;
                if (w.d == 2 && (jj < 1 || jj > N)) return;
                g(w.d == 1 ? w.flat(ii) : w.flat(ii, jj)) += v;
            };
            add(i, j, dy);
            add(i, j, -dz(0) / w.h);
            add(i + 1, j, dz(0) / w.h);
            if (w.d == 2) {
                add(i, j, -dz(1) / w.h);
                add(i, j + 1, dz(1) / w.h);
            }
        }
    }
    for (int i = 1; i <= N; ++i) {
        const int jmax = w.d == 2 ? N : 1;
        for (int j = 1; j <= jmax; ++j) {
            const Eigen::Index o = w.d == 1 ? w.flat(i) : w.flat(i, j);
            g(o) -= p.f(o);
        }
    }
    return g;
}

// Sparse Hessian of the (h^{-d}-scaled) discrete energy.
SpMat fd_hessian(const FDProblem& p, const FDWork& w, const Vec& u) {
    std::vector<Eigen::Triplet<double>> trip;
    const int N = w.N;
    const double invh = 1.0 / w.h;
    Vec z(w.d);
    for (int i = 0; i <= N; ++i) {
        const int jmax = w.d == 2 ? N : 0;
        for (int j = 0; j <= jmax; ++j) {
            for (int a = 0; a < w.d; ++a) z(a) = forward(u, w, i, j, a);
            const double y = node_value(u, w, i, j);
            const Eigen::MatrixXd H = p.spec.hessian(coords(w, i, j), y, z);
            // slots: 0 -> y (this node), 1.. -> z_a (forward edge per axis)
            std::vector<std::vector<std::pair<Eigen::Index, double>>> slot(w.d + 1);
            auto in = [&](int ii, int jj) {
                return ii >= 1 && ii <= N && (w.d == 1 || (jj >= 1 && jj <= N));
            };
            auto at = [&](int ii, int jj) { return w.d == 1 ? w.flat(ii) : w.flat(ii, jj); };
            if (in(i, j)) slot[0].push_back({at(i, j), 1.0});
            {
                std::vector<std::pair<Eigen::Index, double>> sa;
                if (in(i + 1, j)) sa.push_back({at(i + 1, j), invh});
                if (in(i, j)) sa.push_back({at(i, j), -invh});
                slot[1] = sa;
                if (w.d == 2) {
                    std::vector<std::pair<Eigen::Index, double>> sb;
                    if (in(i, j + 1)) sb.push_back({at(i, j + 1), invh});
                    if (in(i, j)) sb.push_back({at(i, j), -invh});
                    slot[2] = sb;
                }
            }
            for (int a = 0; a <= w.d; ++a)
                for (int b = 0; b <= w.d; ++b) {
                    const double hab = H(a, b);
                    if (hab == 0.0) continue;
                    for (const auto& [qa, wa] : slot[a])
                        for (const auto& [qb, wb] : slot[b]) trip.emplace_back(qa, qb, hab * wa * wb);
                }
        }
    }
    SpMat A(w.size, w.size);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

}  // namespace

double fd_energy(const FDProblem& p, const Eigen::VectorXd& u) {
    FDWork w{p.dim, p.N, 1.0 / (p.N + 1), u.size()};
    double E = 0.0;
    const int N = p.N;
    Vec z(p.dim);
    for (int i = 0; i <= N; ++i) {
        const int jmax = p.dim == 2 ? N : 0;
        for (int j = 0; j <= jmax; ++j) {
            for (int a = 0; a < p.dim; ++a) z(a) = forward(u, w, i, j, a);
            E += p.spec.value(coords(w, i, j), node_value(u, w, i, j), z);
        }
    }
    for (int i = 1; i <= N; ++i) {
        const int jmax = p.dim == 2 ? N : 1;
        for (int j = 1; j <= jmax; ++j) {
            const Eigen::Index o = p.dim == 1 ? w.flat(i) : w.flat(i, j);
            E -= p.f(o) * u(o);
        }
    }
    return E * std::pow(w.h, p.dim);
}

FDResult fd_minimize(const FDProblem& p, double tol, int maxIterations) {
    if (p.dim < 1 || p.dim > 2) throw std::invalid_argument("fd_minimize: dim must be 1 or 2");
    if (p.N < 16) throw std::invalid_argument("fd_minimize: need N >= 16");
    FDWork w{p.dim, p.N, 1.0 / (p.N + 1),
             p.dim == 1 ? Eigen::Index(p.N) : Eigen::Index(p.N) * p.N};
    if (p.f.size() != w.size) throw std::invalid_argument("fd_minimize: f has wrong size");

    FDResult res;
    res.u = Vec::Zero(w.size);
    double E = fd_energy(p, res.u);
    for (int it = 0; it < maxIterations; ++it) {
        Vec g = fd_residual(p, w, res.u);
        res.residualInf = g.cwiseAbs().maxCoeff();
        res.iterations = it;
        if (res.residualInf < tol) {
            res.converged = true;
            return res;
        }
        SpMat H = fd_hessian(p, w, res.u);
        Eigen::SimplicialLDLT<SpMat> ldlt(H);
        Vec step;
        if (ldlt.info() == Eigen::Success) {
            step = ldlt.solve(g);
        } else {
            step = g;  // gradient fallback, scaled below by damping
        }
        // damping: halve until the energy decreases, at most 30 times
        double alpha = 1.0;
        bool accepted = false;
        for (int halvings = 0; halvings <= 30; ++halvings) {
            Vec trial = res.u - alpha * step;
            double Et = fd_energy(p, trial);
            if (Et <= E) {
                res.u = std::move(trial);
                E = Et;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            // Newton direction made no progress; try a small gradient step
            double gn = g.norm();
            if (gn == 0.0) break;
            Vec trial = res.u - (1e-3 / gn) * g;
            double Et = fd_energy(p, trial);
            if (Et >= E) break;
            res.u = std::move(trial);
            E = Et;
        }
    }
    Vec g = fd_residual(p, w, res.u);
    res.residualInf = g.cwiseAbs().maxCoeff();
    res.converged = res.residualInf < tol;
    return res;
}

Eigen::VectorXd fd_sample(const SineFunction& g, int N) {
    FDWork w{g.dim, N, 1.0 / (N + 1), g.dim == 1 ? Eigen::Index(N) : Eigen::Index(N) * N};
    if (g.dim > 2) throw std::invalid_argument("fd_sample: dim must be 1 or 2");
    Vec out(w.size);
    for (int i = 1; i <= N; ++i) {
        const int jmax = g.dim == 2 ? N : 1;
        for (int j = 1; j <= jmax; ++j) {
            std::vector<double> x{i * w.h};
            if (g.dim == 2) x.push_back(j * w.h);
            out(g.dim == 1 ? w.flat(i) : w.flat(i, j)) = eval_point(g, x);
        }
    }
    return out;
}

double dense_product_check(const TrigPolynomial& a, const TrigPolynomial& b, int M) {
    if (a.dim != b.dim) throw std::invalid_argument("dense_product_check: dimension mismatch");
    if (M < lattice_radius(a) + lattice_radius(b))
        throw std::invalid_argument("dense_product_check: grid too coarse for the product support");
    TrigPolynomial ab = trig_multiply(a, b);
    double worst = 0.0;
    std::vector<int> idx(a.dim, 0);
    std::vector<double> x(a.dim);
    while (true) {
        for (int i = 0; i < a.dim; ++i) x[i] = (idx[i] + 0.5) / M;
        const std::complex<double> lhs = eval_trig(ab, x);
        const std::complex<double> rhs = eval_trig(a, x) * eval_trig(b, x);
        worst = std::max(worst, std::abs(lhs - rhs));
        int axis = a.dim - 1;
        while (axis >= 0 && ++idx[axis] == M) idx[axis--] = 0;
        if (axis < 0) break;
    }
    return worst;
}

GoldenProblem golden(const std::string& name) {
    const double pi2 = kPi * kPi;
    if (name == "poisson_1d") {
        GoldenProblem g;
        g.name = name;
        g.spec = linear_elliptic(Eigen::MatrixXd::Identity(1, 1), 0.0);
        g.uStar = sine_mode({1});
        g.f = scaled(g.uStar, pi2);
        g.EStar = -pi2 / 4.0;
        return g;
    }
    if (name == "poisson_2d") {
        GoldenProblem g;
        g.name = name;
        g.spec = linear_elliptic(Eigen::MatrixXd::Identity(2, 2), 0.0);
        g.uStar = sine_mode({1, 1});
        g.f = scaled(g.uStar, 2.0 * pi2);
        g.EStar = -pi2 / 4.0;
        return g;
    }
    if (name == "helmholtz_2d") {
        GoldenProblem g;
        g.name = name;
        g.spec = linear_elliptic(Eigen::MatrixXd::Identity(2, 2), 1.0);
        g.uStar = sine_mode({1, 1});
        g.f = scaled(g.uStar, 2.0 * pi2 + 1.0);
        g.EStar = -pi2 / 4.0 - 1.0 / 8.0;
        return g;
    }
    throw std::invalid_argument("golden: unknown problem '" + name + "'");
}

std::vector<std::string> golden_names() { return {"poisson_1d", "poisson_2d", "helmholtz_2d"}; }

}  // namespace vs

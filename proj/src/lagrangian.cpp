#include "vs/lagrangian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vs {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

double eval_monomials(const std::vector<Monomial>& terms, double y, const Vec& z) {
    double s = 0.0;
    for (const auto& t : terms) {
        double v = t.A;
        for (int e = 0; e < t.yExp; ++e) v *= y;
        for (size_t j = 0; j < t.zExp.size(); ++j)
            for (int e = 0; e < t.zExp[j]; ++e) v *= z(Eigen::Index(j));
        s += v;
    }
    return s;
}

std::vector<Monomial> d_dy(const std::vector<Monomial>& terms) {
    std::vector<Monomial> r;
    for (const auto& t : terms)
        if (t.yExp > 0) r.push_back({t.yExp - 1, t.zExp, t.A * t.yExp});
    return r;
}

std::vector<Monomial> d_dz(const std::vector<Monomial>& terms, int j) {
    std::vector<Monomial> r;
    for (const auto& t : terms)
        if (t.zExp[j] > 0) {
            Monomial m{t.yExp, t.zExp, t.A * t.zExp[j]};
            m.zExp[j] -= 1;
            r.push_back(m);
        }
    return r;
}

int total_degree(const Monomial& t) {
    int d = t.yExp;
    for (int e : t.zExp) d += e;
    return d;
}

// Deterministic box samples: the {-1,0,1}^(d+1) corner grid first, then
// seeded uniform draws until nSamples points are collected.
std::vector<std::pair<double, Vec>> box_samples(int dim, const ValueBox& box, int nSamples,
                                                unsigned seed) {
    std::vector<std::pair<double, Vec>> out;
    std::vector<int> idx(dim + 1, 0);
    while (true) {
        double y = box.yAbs * (idx[0] - 1);
        Vec z(dim);
        for (int j = 0; j < dim; ++j) z(j) = box.zAbs * (idx[j + 1] - 1);
        out.push_back({y, z});
        int a = dim;
        while (a >= 0 && ++idx[a] == 3) idx[a--] = 0;
        if (a < 0) break;
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    while (int(out.size()) < nSamples) {
        double y = box.yAbs * U(rng);
        Vec z(dim);
        for (int j = 0; j < dim; ++j) z(j) = box.zAbs * U(rng);
        out.push_back({y, z});
    }
    if (int(out.size()) > nSamples) out.resize(nSamples);
    return out;
}

LagrangianSpec from_terms(int dim, std::vector<Monomial> raw, const ValueBox& box, double wRef,
                          const std::string& name) {
    // Enforce L(x,0,0) = 0 and grad L(x,0,0) = 0 by dropping the constant
    // and linear monomials.
    std::vector<Monomial> terms;
    int P = 0;
    for (auto& t : raw) {
        if (int(t.zExp.size()) != dim) throw std::invalid_argument("polynomial_lagrangian: zExp size");
        if (total_degree(t) <= 1 || t.A == 0.0) continue;
        P = std::max(P, total_degree(t));
        terms.push_back(t);
    }
    auto dyTerms = d_dy(terms);
    std::vector<std::vector<Monomial>> dzTerms(dim);
    for (int j = 0; j < dim; ++j) dzTerms[j] = d_dz(terms, j);
    auto dyy = d_dy(dyTerms);
    std::vector<std::vector<Monomial>> dyz(dim), dzz(dim * dim);
    for (int j = 0; j < dim; ++j) dyz[j] = d_dz(dyTerms, j);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) dzz[i * dim + j] = d_dz(dzTerms[i], j);

    LagrangianSpec spec;
    spec.dim = dim;
    spec.name = name;
    spec.box = box;
    spec.terms = terms;
    spec.value = [terms](const Vec&, double y, const Vec& z) { return eval_monomials(terms, y, z); };
    spec.dy = [dyTerms](const Vec&, double y, const Vec& z) { return eval_monomials(dyTerms, y, z); };
    spec.dz = [dzTerms, dim](const Vec&, double y, const Vec& z) {
        Vec g(dim);
        for (int j = 0; j < dim; ++j) g(j) = eval_monomials(dzTerms[j], y, z);
        return g;
    };
    spec.hessian = [dyy, dyz, dzz, dim](const Vec&, double y, const Vec& z) {
        Mat H(dim + 1, dim + 1);
        H(0, 0) = eval_monomials(dyy, y, z);
        for (int j = 0; j < dim; ++j) {
            double v = eval_monomials(dyz[j], y, z);
            H(0, j + 1) = v;
            H(j + 1, 0) = v;
        }
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) H(i + 1, j + 1) = eval_monomials(dzz[i * dim + j], y, z);
        return H;
    };

    // Certify the Hessian sandwich on the box and derive (lambda, Lambda).
    auto samples = box_samples(dim, box, 200 + (1 << std::min(10, 2 * (dim + 1))), 1234u);
    double lam = std::numeric_limits<double>::infinity();
    double Lam = 0.0;
    Vec x0 = Vec::Constant(dim, 0.5);
    for (const auto& [y, z] : samples) {
        Mat H = spec.hessian(x0, y, z);
        Eigen::SelfAdjointEigenSolver<Mat> zb(H.bottomRightCorner(dim, dim));
        Eigen::SelfAdjointEigenSolver<Mat> fb(H);
        lam = std::min(lam, zb.eigenvalues().minCoeff());
        Lam = std::max(Lam, fb.eigenvalues().maxCoeff());
        if (fb.eigenvalues().minCoeff() < -1e-10 || zb.eigenvalues().minCoeff() <= 0.0) {
            std::ostringstream os;
            os << "polynomial_lagrangian: convexity sandwich fails at y=" << y << ", z=["
               << z.transpose() << "]";
            throw std::invalid_argument(os.str());
        }
        // Sandwich in the quadratic-form sense: H - diag(0, lam_sample I) >= 0
        // with lam_sample the z-block floor at this point.
        Mat Shift = H;
        Shift.bottomRightCorner(dim, dim) -=
            zb.eigenvalues().minCoeff() * Mat::Identity(dim, dim);
        Eigen::SelfAdjointEigenSolver<Mat> sb(Shift);
        if (sb.eigenvalues().minCoeff() < -1e-10) {
            std::ostringstream os;
            os << "polynomial_lagrangian: cross-term sandwich fails at y=" << y << ", z=["
               << z.transpose() << "]";
            throw std::invalid_argument(os.str());
        }
    }
    spec.lambda = lam;
    spec.Lambda = Lam;

    // Growth constants: derivatives of a degree-P polynomial have degree
    // P-1, so p = k = max(P-1, 1); B covers the divergence term for any
    // iterate bandlimit up to wRef.
    AssumptionConstants ac;
    ac.p = std::max(P - 1, 1);
    ac.k = std::max(P - 1, 1);
    double sq = 0.0;
    {
        double s = 0.0;
        for (const auto& t : dyTerms) s += t.A * t.A;
        sq = s;
        for (int j = 0; j < dim; ++j) {
            s = 0.0;
            for (const auto& t : dzTerms[j]) s += t.A * t.A;
            sq = std::max(sq, s);
        }
    }
    ac.B = std::pow(double(dim + 1), 0.5 * ac.p) * std::sqrt(sq) * 2.0 * kPi * wRef;
    ac.eps = 0.0;
    ac.verified = true;
    spec.constants = ac;
    return spec;
}

}  // namespace

LagrangianSpec linear_elliptic(const Eigen::MatrixXd& A, double c) {
    const int d = int(A.rows());
    if (A.rows() != A.cols()) throw std::invalid_argument("linear_elliptic: A must be square");
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("linear_elliptic: A must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    const double amin = es.eigenvalues().minCoeff();
    const double amax = es.eigenvalues().maxCoeff();
    if (amin <= 0.0) throw std::invalid_argument("linear_elliptic: A must be positive definite");
    if (c < 0.0) throw std::invalid_argument("linear_elliptic: c must be nonnegative");
    std::vector<Monomial> terms;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Monomial m;
            m.yExp = 0;
            m.zExp.assign(d, 0);
            m.zExp[i] += 1;
            m.zExp[j] += 1;
            m.A = (i == j ? 0.5 : 1.0) * A(i, j);
            if (m.A != 0.0) terms.push_back(m);
        }
    if (c != 0.0) terms.push_back({2, std::vector<int>(d, 0), 0.5 * c});
    ValueBox box{1e6, 1e6};  // quadratic: sandwich holds globally
    LagrangianSpec spec = from_terms(d, terms, box, 16.0, "linear_elliptic");
    spec.lambda = amin;
    spec.Lambda = std::max(amax, c);
    return spec;
}

LagrangianSpec linear_elliptic(int dim,
                               const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& A,
                               const std::function<double(const Eigen::VectorXd&)>& c, int nGrid) {
    double amin = std::numeric_limits<double>::infinity();
    double amax = 0.0, cmax = 0.0;
    std::vector<int> idx(dim, 0);
    Vec x(dim);
    while (true) {
        for (int i = 0; i < dim; ++i) x(i) = idx[i] / double(nGrid - 1);
        Mat Ax = A(x);
        if ((Ax - Ax.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("linear_elliptic: A(x) must be symmetric");
        Eigen::SelfAdjointEigenSolver<Mat> es(Ax);
        amin = std::min(amin, es.eigenvalues().minCoeff());
        amax = std::max(amax, es.eigenvalues().maxCoeff());
        const double cx = c(x);
        if (cx < 0.0) throw std::invalid_argument("linear_elliptic: c(x) must be nonnegative");
        cmax = std::max(cmax, cx);
        int a = dim - 1;
        while (a >= 0 && ++idx[a] == nGrid) idx[a--] = 0;
        if (a < 0) break;
    }
    if (amin <= 0.0)
        throw std::invalid_argument("linear_elliptic: A(x) loses positivity on the sample grid");

    LagrangianSpec spec;
    spec.dim = dim;
    spec.name = "linear_elliptic_field";
    spec.box = ValueBox{1e6, 1e6};
    spec.lambda = amin;
    spec.Lambda = std::max(amax, cmax);
    spec.value = [A, c](const Vec& x, double y, const Vec& z) {
        return 0.5 * z.dot(A(x) * z) + 0.5 * c(x) * y * y;
    };
    spec.dy = [c](const Vec& x, double y, const Vec&) { return c(x) * y; };
    spec.dz = [A](const Vec& x, double, const Vec& z) { return Vec(A(x) * z); };
    spec.hessian = [A, c, dim](const Vec& x, double, const Vec&) {
        Mat H = Mat::Zero(dim + 1, dim + 1);
        H(0, 0) = c(x);
        H.bottomRightCorner(dim, dim) = A(x);
        return H;
    };
    return spec;  // constants stay unset: growth bookkeeping is unverified here
}

LagrangianSpec polynomial_lagrangian(int dim, const std::vector<Monomial>& terms,
                                     const ValueBox& box, double wRef) {
    return from_terms(dim, terms, box, wRef, "polynomial");
}

ConvexityEstimate estimate_convexity(const LagrangianSpec& spec, const ValueBox& box,
                                     int nSamples) {
    if (nSamples < 1) throw std::invalid_argument("estimate_convexity: need nSamples >= 1");
    const int d = spec.dim;
    auto samples = box_samples(d, box, nSamples, 77u);
    ConvexityEstimate est;
    est.lambdaHat = std::numeric_limits<double>::infinity();
    est.LambdaHat = -std::numeric_limits<double>::infinity();
    Vec x0 = Vec::Constant(d, 0.5);
    for (const auto& [y, z] : samples) {
        Mat H = spec.hessian(x0, y, z);
        if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-8)
            throw std::invalid_argument("estimate_convexity: non-symmetric Hessian");
        Eigen::SelfAdjointEigenSolver<Mat> zb(H.bottomRightCorner(d, d));
        Eigen::SelfAdjointEigenSolver<Mat> fb(H);
        double lo = zb.eigenvalues().minCoeff();
        double hi = fb.eigenvalues().maxCoeff();
        Vec yz(d + 1);
        yz(0) = y;
        yz.tail(d) = z;
        if (lo < est.lambdaHat) {
            est.lambdaHat = lo;
            est.argminSample = yz;
        }
        if (hi > est.LambdaHat) {
            est.LambdaHat = hi;
            est.argmaxSample = yz;
        }
    }
    return est;
}

double approximate_pair(const LagrangianSpec& exact, const LagrangianSpec& approx,
                        const std::vector<std::pair<double, Eigen::VectorXd>>& samples) {
    if (exact.dim != approx.dim) throw std::invalid_argument("approximate_pair: dimension mismatch");
    Vec x0 = Vec::Constant(exact.dim, 0.5);
    double eps = 0.0;
    for (const auto& [y, z] : samples) {
        const double dyGap = std::abs(exact.dy(x0, y, z) - approx.dy(x0, y, z));
        const double dzGap = (exact.dz(x0, y, z) - approx.dz(x0, y, z)).norm();
        const double gap = std::max(dyGap, dzGap);
        if (y == 0.0) {
            if (gap > 0.0) return std::numeric_limits<double>::infinity();
            continue;
        }
        eps = std::max(eps, gap / std::abs(y));
    }
    return eps;
}

LagrangianSpec quartic_lagrangian(int dim, const ValueBox& box, double wRef) {
    std::vector<Monomial> terms;
    for (int j = 0; j < dim; ++j) {
        Monomial m{0, std::vector<int>(dim, 0), 0.5};
        m.zExp[j] = 2;
        terms.push_back(m);
    }
    terms.push_back({2, std::vector<int>(dim, 0), 0.5});
    terms.push_back({4, std::vector<int>(dim, 0), 0.25});
    LagrangianSpec s = from_terms(dim, terms, box, wRef, "quartic");
    return s;
}

LagrangianSpec quartic_truncation(int dim, const ValueBox& box, double wRef) {
    std::vector<Monomial> terms;
    for (int j = 0; j < dim; ++j) {
        Monomial m{0, std::vector<int>(dim, 0), 0.5};
        m.zExp[j] = 2;
        terms.push_back(m);
    }
    terms.push_back({2, std::vector<int>(dim, 0), 0.5});
    LagrangianSpec s = from_terms(dim, terms, box, wRef, "quartic_truncation");
    return s;
}

}  // namespace vs

#include "vs/grid.hpp"

#include <stdexcept>

namespace vs {

namespace {

// Separable tensor transform: applies one matrix per axis in order, on a
// row-major tensor (last axis fastest).  Extents may differ before/after.
Eigen::VectorXd transform_all(Eigen::VectorXd data, int dim, int nIn,
                              const std::vector<const Eigen::MatrixXd*>& mats) {
    std::vector<int> extent(dim, nIn);
    for (int axis = 0; axis < dim; ++axis) {
        const Eigen::MatrixXd& mat = *mats[axis];
        const int q = int(mat.cols());
        const int p = int(mat.rows());
        if (extent[axis] != q) throw std::logic_error("transform_all: extent mismatch");
        Eigen::Index outer = 1, inner = 1;
        for (int i = 0; i < axis; ++i) outer *= extent[i];
        for (int i = axis + 1; i < dim; ++i) inner *= extent[i];
        Eigen::VectorXd out = Eigen::VectorXd::Zero(outer * Eigen::Index(p) * inner);
        for (Eigen::Index o = 0; o < outer; ++o) {
            const double* blockIn = data.data() + o * Eigen::Index(q) * inner;
            double* blockOut = out.data() + o * Eigen::Index(p) * inner;
            // blockOut[pp*inner + k] = sum_qq mat(pp,qq) * blockIn[qq*inner + k]
            Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
                Bi(blockIn, q, inner);
            Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
                Bo(blockOut, p, inner);
            Bo.noalias() = mat * Bi;
        }
        data = std::move(out);
        extent[axis] = p;
    }
    return data;
}

Eigen::MatrixXd sine_matrix(int M, int W) {
    // rows: nodes j=1..M, cols: frequencies w=1..W
    Eigen::MatrixXd S(M, W);
    for (int j = 1; j <= M; ++j)
        for (int w = 1; w <= W; ++w) S(j - 1, w - 1) = std::sin(kPi * w * j / double(M + 1));
    return S;
}

Eigen::MatrixXd sine_matrix_ext(int M, int W) {
    // rows: nodes j=0..M+1 (boundary included)
    Eigen::MatrixXd S(M + 2, W);
    for (int j = 0; j <= M + 1; ++j)
        for (int w = 1; w <= W; ++w) S(j, w - 1) = std::sin(kPi * w * j / double(M + 1));
    return S;
}

Eigen::MatrixXd dsine_matrix_ext(int M, int W) {
    // d/dx of sin(pi w x) at the extended nodes
    Eigen::MatrixXd D(M + 2, W);
    for (int j = 0; j <= M + 1; ++j)
        for (int w = 1; w <= W; ++w) D(j, w - 1) = kPi * w * std::cos(kPi * w * j / double(M + 1));
    return D;
}

Eigen::VectorXd trapezoid_weights(int M) {
    const double h = 1.0 / (M + 1);
    Eigen::VectorXd w = Eigen::VectorXd::Constant(M + 2, h);
    w(0) = 0.5 * h;
    w(M + 1) = 0.5 * h;
    return w;
}

Eigen::VectorXd dense_coefficients(const SineFunction& f) {
    const int W = f.bandlimit;
    Eigen::Index n = 1;
    for (int i = 0; i < f.dim; ++i) n *= W;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    for (const auto& [w, v] : f.coeff) {
        Eigen::Index off = 0;
        for (int i = 0; i < f.dim; ++i) off = off * W + (w[i] - 1);
        c(off) = v;
    }
    return c;
}

}  // namespace

GridFunction to_grid(const SineFunction& f, int M) {
    if (M < f.bandlimit) throw std::invalid_argument("to_grid: M < W would alias");
    const Eigen::MatrixXd S = sine_matrix(M, f.bandlimit);
    std::vector<const Eigen::MatrixXd*> mats(f.dim, &S);
    GridFunction g;
    g.dim = f.dim;
    g.pointsPerAxis = M;
    g.values = transform_all(dense_coefficients(f), f.dim, f.bandlimit, mats);
    return g;
}

SineFunction from_grid(const GridFunction& g, int W) {
    if (g.pointsPerAxis < W) throw std::invalid_argument("from_grid: M < W would alias");
    const int M = g.pointsPerAxis;
    // DST-I analysis: c_w = (2/(M+1)) sum_j g_j sin(pi w j/(M+1)), per axis.
    Eigen::MatrixXd A = (2.0 / (M + 1)) * sine_matrix(M, W).transpose();
    std::vector<const Eigen::MatrixXd*> mats(g.dim, &A);
    Eigen::VectorXd c = transform_all(g.values, g.dim, M, mats);
    SineFunction f(g.dim, W);
    for_each_index(g.dim, 1, W, [&](const MultiIndex& w) {
        Eigen::Index off = 0;
        for (int i = 0; i < g.dim; ++i) off = off * W + (w[i] - 1);
        if (c(off) != 0.0) f.coeff[w] = c(off);
    });
    return f;
}

std::vector<GridFunction> gradient_on_grid(const SineFunction& f, int M) {
    if (M < f.bandlimit) throw std::invalid_argument("gradient_on_grid: M < W would alias");
    const int W = f.bandlimit;
    Eigen::MatrixXd S = sine_matrix(M, W);
    Eigen::MatrixXd D(M, W);  // pi w cos(pi w x_j)
    for (int j = 1; j <= M; ++j)
        for (int w = 1; w <= W; ++w) D(j - 1, w - 1) = kPi * w * std::cos(kPi * w * j / double(M + 1));
    const Eigen::VectorXd c = dense_coefficients(f);
    std::vector<GridFunction> out;
    out.reserve(f.dim);
    for (int axis = 0; axis < f.dim; ++axis) {
        std::vector<const Eigen::MatrixXd*> mats(f.dim, &S);
        mats[axis] = &D;
        GridFunction g;
        g.dim = f.dim;
        g.pointsPerAxis = M;
        g.values = transform_all(c, f.dim, W, mats);
        out.push_back(std::move(g));
    }
    return out;
}

ExtendedGrid sample_extended(const SineFunction& f, int M) {
    if (M < f.bandlimit) throw std::invalid_argument("sample_extended: M < W would alias");
    const Eigen::MatrixXd S = sine_matrix_ext(M, f.bandlimit);
    std::vector<const Eigen::MatrixXd*> mats(f.dim, &S);
    ExtendedGrid g;
    g.dim = f.dim;
    g.M = M;
    g.values = transform_all(dense_coefficients(f), f.dim, f.bandlimit, mats);
    return g;
}

std::vector<ExtendedGrid> sample_gradient_extended(const SineFunction& f, int M) {
    if (M < f.bandlimit) throw std::invalid_argument("sample_gradient_extended: M < W would alias");
    const Eigen::MatrixXd S = sine_matrix_ext(M, f.bandlimit);
    const Eigen::MatrixXd D = dsine_matrix_ext(M, f.bandlimit);
    const Eigen::VectorXd c = dense_coefficients(f);
    std::vector<ExtendedGrid> out;
    out.reserve(f.dim);
    for (int axis = 0; axis < f.dim; ++axis) {
        std::vector<const Eigen::MatrixXd*> mats(f.dim, &S);
        mats[axis] = &D;
        ExtendedGrid g;
        g.dim = f.dim;
        g.M = M;
        g.values = transform_all(c, f.dim, f.bandlimit, mats);
        out.push_back(std::move(g));
    }
    return out;
}

double integrate(const ExtendedGrid& g) {
    const Eigen::VectorXd w1 = trapezoid_weights(g.M);
    Eigen::MatrixXd row = w1.transpose();  // 1 x (M+2)
    std::vector<const Eigen::MatrixXd*> mats(g.dim, &row);
    Eigen::VectorXd r = transform_all(g.values, g.dim, g.M + 2, mats);
    return r(0);
}

Eigen::VectorXd project_sine(const ExtendedGrid& F, int W) {
    const Eigen::VectorXd w1 = trapezoid_weights(F.M);
    Eigen::MatrixXd S = sine_matrix_ext(F.M, W).transpose();  // W x (M+2)
    for (int j = 0; j < S.cols(); ++j) S.col(j) *= w1(j);
    std::vector<const Eigen::MatrixXd*> mats(F.dim, &S);
    return transform_all(F.values, F.dim, F.M + 2, mats);
}

Eigen::VectorXd project_dsine(const ExtendedGrid& F, int W, int axis) {
    const Eigen::VectorXd w1 = trapezoid_weights(F.M);
    Eigen::MatrixXd S = sine_matrix_ext(F.M, W).transpose();
    Eigen::MatrixXd D = dsine_matrix_ext(F.M, W).transpose();
    for (int j = 0; j < S.cols(); ++j) {
        S.col(j) *= w1(j);
        D.col(j) *= w1(j);
    }
    std::vector<const Eigen::MatrixXd*> mats(F.dim, &S);
    mats[axis] = &D;
    return transform_all(F.values, F.dim, F.M + 2, mats);
}

}  // namespace vs

#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace vs {

// Frequency/lattice index: one integer per axis.  Sine-basis indices live in
// [1,W]^d, trigonometric lattice points in Z^d.
using MultiIndex = std::vector<int>;

inline double l2_squared(const MultiIndex& m) {
    double s = 0.0;
    for (int v : m) s += double(v) * double(v);
    return s;
}

inline int linf(const MultiIndex& m) {
    int r = 0;
    for (int v : m) r = std::max(r, std::abs(v));
    return r;
}

inline MultiIndex negated(const MultiIndex& m) {
    MultiIndex r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i] = -m[i];
    return r;
}

inline MultiIndex added(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// Visits every index with lo <= m_i <= hi, last axis fastest.
inline void for_each_index(int dim, int lo, int hi, const std::function<void(const MultiIndex&)>& fn) {
    if (hi < lo) return;
    MultiIndex m(dim, lo);
    while (true) {
        fn(m);
        int axis = dim - 1;
        while (axis >= 0) {
            if (++m[axis] <= hi) break;
            m[axis] = lo;
            --axis;
        }
        if (axis < 0) return;
    }
}

}  // namespace vs

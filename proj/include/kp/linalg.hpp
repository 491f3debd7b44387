#pragma once

// Small dense-vector helpers shared by every module. Points are plain
// std::vector<double> so the whole toolkit stays dimension-generic.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kp {

using Point = std::vector<double>;

inline double dot(const Point& a, const Point& b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }

inline double dist2(const Point& a, const Point& b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

inline Point add(const Point& a, const Point& b) {
    Point r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Point sub(const Point& a, const Point& b) {
    Point r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Point scaled(const Point& a, double s) {
    Point r(a);
    for (auto& c : r) c *= s;
    return r;
}

/// Axis-aligned box, the sampling domain for hit-or-miss estimates.
struct Box {
    Point lo;
    Point hi;

    int dim() const { return static_cast<int>(lo.size()); }

    bool valid() const {
        if (lo.size() != hi.size() || lo.empty()) return false;
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] <= hi[i])) return false;
        return true;
    }

    double volume() const {
        double v = 1.0;
        for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
        return v;
    }

    Point sample(class Rng& rng) const;

    /// Expand so that `p` inflated by `pad` fits.
    void absorb(const Point& p, double pad = 0.0) {
        for (std::size_t i = 0; i < lo.size(); ++i) {
            lo[i] = std::min(lo[i], p[i] - pad);
            hi[i] = std::max(hi[i], p[i] + pad);
        }
    }
};

/// Solve A x = b in place by Gaussian elimination with partial pivoting.
/// Returns false when the pivot drops below `tol` (singular system).
inline bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double>& x, double tol = 1e-12) {
    const std::size_t n = a.size();
    if (n == 0) {
        x.clear();
        return true;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < tol) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        const double inv = 1.0 / a[col][col];
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] * inv;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return true;
}

} // namespace kp

#include "kp/rng.hpp"

namespace kp {

inline Point Box::sample(Rng& rng) const {
    Point p(lo.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = rng.uniform(lo[i], hi[i]);
    return p;
}

} // namespace kp

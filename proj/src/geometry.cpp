#include "kp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kp {

void Configuration::validate() const {
    if (dim < 1) throw std::invalid_argument("Configuration: dim must be >= 1");
    if (points.empty()) throw std::invalid_argument("Configuration: needs at least one point");
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("Configuration: point dimension mismatch");
        for (double c : p)
            if (!std::isfinite(c)) throw std::invalid_argument("Configuration: non-finite coordinate");
    }
}

static void require_same_shape(const Configuration& p, const Configuration& q) {
    if (p.dim != q.dim) throw std::invalid_argument("configurations differ in dimension");
    if (p.size() != q.size()) throw std::invalid_argument("configurations differ in point count");
}

DistanceSummary pairwise_distances(const Configuration& config) {
    config.validate();
    const int n = config.size();
    DistanceSummary s;
    s.matrix.assign(n, std::vector<double>(n, 0.0));
    if (n == 1) return s; // extremes defined as 0 for a single point
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = dist(config.points[i], config.points[j]);
            s.matrix[i][j] = s.matrix[j][i] = d;
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
    }
    s.min_pairwise = lo;
    s.max_pairwise = hi;
    return s;
}

bool is_contraction(const Configuration& p, const Configuration& q, double tol) {
    require_same_shape(p, q);
    const int n = p.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dist(q.points[i], q.points[j]) > dist(p.points[i], p.points[j]) + tol)
                return false;
    return true;
}

std::optional<std::pair<double, double>> uniform_contraction_interval(const Configuration& p,
                                                                      const Configuration& q) {
    require_same_shape(p, q);
    if (p.size() < 2) throw std::invalid_argument("uniform_contraction_interval: needs N >= 2");
    const double hi = pairwise_distances(p).min_pairwise;
    const double lo = pairwise_distances(q).max_pairwise;
    if (lo <= hi) return std::make_pair(lo, hi);
    return std::nullopt;
}

bool is_strong_contraction(const Configuration& p, const Configuration& q, double tol) {
    require_same_shape(p, q);
    const int n = p.size();
    for (int k = 0; k < p.dim; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double gp = std::fabs(p.points[i][k] - p.points[j][k]);
                const double gq = std::fabs(q.points[i][k] - q.points[j][k]);
                if (gq > gp + tol) return false;
            }
    return true;
}

Configuration one_sided_reflection(const Configuration& config, int axis, double level,
                                   HalfSide side) {
    config.validate();
    if (axis < 0 || axis >= config.dim)
        throw std::invalid_argument("one_sided_reflection: axis out of range");
    Configuration out = config;
    for (auto& pt : out.points) {
        const double c = pt[axis];
        const bool reflect = (side == HalfSide::Positive) ? (c > level) : (c < level);
        if (reflect) pt[axis] = 2.0 * level - c;
    }
    return out;
}

// --- minimal enclosing ball -------------------------------------------------

namespace {

struct Ball {
    Point center;
    double radius2 = -1.0; // negative marks "no ball yet"
};

bool ball_contains(const Ball& b, const Point& p, double slack) {
    if (b.radius2 < 0.0) return false;
    return dist2(p, b.center) <= b.radius2 * (1.0 + slack) + 1e-30;
}

// Smallest ball with all of `sup` on its boundary (circumsphere within the
// affine hull of the support set). Returns nullopt when the support points
// are affinely dependent beyond tolerance.
std::optional<Ball> ball_from_support(const std::vector<const Point*>& sup) {
    if (sup.empty()) return Ball{{}, -1.0};
    const Point& base = *sup[0];
    const std::size_t m = sup.size() - 1;
    if (m == 0) return Ball{base, 0.0};
    std::vector<Point> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = sub(*sup[i + 1], base);
    std::vector<std::vector<double>> gram(m, std::vector<double>(m));
    std::vector<double> rhs(m);
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) gram[i][j] = 2.0 * dot(v[i], v[j]);
        rhs[i] = dot(v[i], v[i]);
        scale = std::max(scale, rhs[i]);
    }
    std::vector<double> coef;
    if (!solve_linear(gram, rhs, coef, std::max(1e-14, 1e-12 * scale))) return std::nullopt;
    Point center = base;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < center.size(); ++c) center[c] += coef[i] * v[i][c];
    return Ball{center, dist2(center, base)};
}

Ball welzl(std::vector<const Point*>& pts, std::size_t n, std::vector<const Point*>& support,
           std::size_t dim) {
    if (n == 0 || support.size() == dim + 1) {
        auto b = ball_from_support(support);
        if (b) return *b;
        // Affinely dependent support: drop the oldest point and retry.
        std::vector<const Point*> reduced(support.begin() + 1, support.end());
        auto fb = ball_from_support(reduced);
        return fb ? *fb : Ball{*support.back(), 0.0};
    }
    const Point* p = pts[n - 1];
    Ball b = welzl(pts, n - 1, support, dim);
    if (ball_contains(b, *p, 1e-12)) return b;
    support.push_back(p);
    Ball r = welzl(pts, n - 1, support, dim);
    support.pop_back();
    // Move-to-front so the certifying point is met early next time.
    std::rotate(pts.begin(), pts.begin() + (n - 1), pts.begin() + n);
    return r;
}

} // namespace

Circumball circumball(const std::vector<Point>& pts) {
    if (pts.empty()) throw std::invalid_argument("circumball: empty point set");
    const std::size_t dim = pts[0].size();
    std::vector<const Point*> ptrs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) ptrs[i] = &pts[i];
    // Deterministic shuffle to defuse adversarial orders.
    Rng rng(0x5eedULL ^ (pts.size() * 0x9e3779b97f4a7c15ULL));
    for (std::size_t i = ptrs.size(); i > 1; --i)
        std::swap(ptrs[i - 1], ptrs[rng.next_u64() % i]);

    std::vector<const Point*> support;
    Ball best = welzl(ptrs, ptrs.size(), support, dim);
    // A couple of repair passes: if rounding left a point outside, re-run
    // with that point forced into the front. Desk-scale inputs converge
    // immediately; this is belt-and-braces for near-degenerate sets.
    for (int pass = 0; pass < 3; ++pass) {
        const Point* worst = nullptr;
        double worst_excess = best.radius2 * 1e-10 + 1e-28;
        for (const Point* p : ptrs) {
            const double excess = dist2(*p, best.center) - best.radius2;
            if (excess > worst_excess) {
                worst_excess = excess;
                worst = p;
            }
        }
        if (!worst) break;
        auto it = std::find(ptrs.begin(), ptrs.end(), worst);
        std::rotate(ptrs.begin(), it, it + 1);
        support.clear();
        best = welzl(ptrs, ptrs.size(), support, dim);
    }

    Circumball out;
    out.center = best.center;
    out.radius = std::sqrt(std::max(0.0, best.radius2));
    const double on_tol = std::max(1e-9, 1e-9 * out.radius);
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (std::fabs(dist(pts[i], out.center) - out.radius) <= on_tol)
            out.support.push_back(static_cast<int>(i));
    return out;
}

Circumball circumball(const Configuration& config) {
    config.validate();
    return circumball(config.points);
}

Circumball circumball_bruteforce(const std::vector<Point>& pts) {
    if (pts.empty()) throw std::invalid_argument("circumball_bruteforce: empty point set");
    const std::size_t n = pts.size();
    const std::size_t dim = pts[0].size();
    Circumball best;
    best.radius = std::numeric_limits<double>::infinity();

    std::vector<int> idx;
    auto consider = [&](const std::vector<int>& subset) {
        std::vector<const Point*> sup;
        sup.reserve(subset.size());
        for (int i : subset) sup.push_back(&pts[i]);
        auto b = ball_from_support(sup);
        if (!b) return;
        const double r = std::sqrt(std::max(0.0, b->radius2));
        if (r >= best.radius) return;
        for (const auto& p : pts)
            if (dist(p, b->center) > r + std::max(1e-12, 1e-12 * r)) return;
        best.center = b->center;
        best.radius = r;
        best.support = subset;
    };

    // All subsets of size 1 .. dim+1.
    std::vector<int> subset;
    auto rec = [&](auto&& self, std::size_t start, std::size_t want) -> void {
        if (subset.size() == want) {
            consider(subset);
            return;
        }
        for (std::size_t i = start; i + (want - subset.size()) <= n; ++i) {
            subset.push_back(static_cast<int>(i));
            self(self, i + 1, want);
            subset.pop_back();
        }
    };
    for (std::size_t k = 1; k <= std::min(n, dim + 1); ++k) rec(rec, 0, k);
    return best;
}

std::vector<Point> regular_simplex_vertices(int dim, double edge) {
    if (dim < 1) throw std::invalid_argument("regular_simplex_vertices: dim >= 1 required");
    // Start from e_1 .. e_{d+1} in R^{d+1} (pairwise distance sqrt 2) and
    // rotate the all-ones direction onto the last axis, which then carries
    // a constant coordinate and can be dropped.
    const int n = dim + 1;
    Point w(n, 1.0 / std::sqrt(static_cast<double>(n)));
    Point u = w;
    u[n - 1] -= 1.0;
    const double un = norm(u);
    std::vector<Point> verts(n, Point(dim, 0.0));
    for (int i = 0; i < n; ++i) {
        Point e(n, 0.0);
        e[i] = 1.0;
        if (un > 1e-12) {
            const double f = 2.0 * dot(u, e) / (un * un);
            for (int c = 0; c < n; ++c) e[c] -= f * u[c];
        }
        for (int c = 0; c < dim; ++c) verts[i][c] = e[c] * (edge / std::sqrt(2.0));
    }
    // Center at the origin.
    Point centroid(dim, 0.0);
    for (const auto& v : verts) centroid = add(centroid, v);
    centroid = scaled(centroid, 1.0 / n);
    for (auto& v : verts) v = sub(v, centroid);
    return verts;
}

UniformContractionPair sample_uniform_contraction_pair(int dim, int n, double lambda,
                                                       double region_scale, std::uint64_t seed) {
    if (dim < 1 || n < 2) throw std::invalid_argument("sampler: need d >= 1, N >= 2");
    if (!(lambda > 0.0)) throw std::invalid_argument("sampler: lambda must be positive");
    if (region_scale <= 0.0)
        region_scale = lambda * (std::pow(static_cast<double>(n), 1.0 / dim) + 2.0);

    Rng rng(seed);
    UniformContractionPair pair;
    pair.q.dim = dim;
    for (int i = 0; i < n; ++i) pair.q.points.push_back(rng.in_ball(dim, lambda / 2.0));

    pair.p.dim = dim;
    long budget = static_cast<long>(n) * 10000L;
    while (static_cast<int>(pair.p.points.size()) < n) {
        if (budget-- <= 0)
            throw std::runtime_error("sample_uniform_contraction_pair: placement budget exhausted "
                                     "(region too small for the requested min distance)");
        Point cand = rng.in_ball(dim, region_scale);
        bool ok = true;
        for (const auto& placed : pair.p.points)
            if (dist(placed, cand) < lambda) {
                ok = false;
                break;
            }
        if (ok) pair.p.points.push_back(std::move(cand));
    }
    return pair;
}

Configuration random_reflection_composite(const Configuration& p, int count, Rng& rng) {
    Configuration q = p;
    for (int step = 0; step < count; ++step) {
        const int axis = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(p.dim));
        double lo = q.points[0][axis], hi = lo;
        for (const auto& pt : q.points) {
            lo = std::min(lo, pt[axis]);
            hi = std::max(hi, pt[axis]);
        }
        const double level = rng.uniform(lo - 0.1 * (hi - lo + 1.0), hi + 0.1 * (hi - lo + 1.0));
        const HalfSide side = (rng.next_u64() & 1) ? HalfSide::Positive : HalfSide::Negative;
        q = one_sided_reflection(q, axis, level, side);
    }
    return q;
}

Configuration coordinate_gap_contraction_axis(const Configuration& p, int axis, Rng& rng) {
    if (axis < 0 || axis >= p.dim)
        throw std::invalid_argument("coordinate_gap_contraction_axis: axis out of range");
    Configuration q = p;
    const int n = p.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return p.points[a][axis] < p.points[b][axis]; });
    double prev_old = p.points[order[0]][axis];
    double prev_new = prev_old;
    q.points[order[0]][axis] = prev_new;
    for (int r = 1; r < n; ++r) {
        const double cur = p.points[order[r]][axis];
        const double gap = cur - prev_old;
        prev_new += gap * rng.uniform(); // factor in [0,1): every gap shrinks
        q.points[order[r]][axis] = prev_new;
        prev_old = cur;
    }
    return q;
}

Configuration coordinate_gap_contraction(const Configuration& p, Rng& rng) {
    Configuration q = p;
    for (int axis = 0; axis < p.dim; ++axis) q = coordinate_gap_contraction_axis(q, axis, rng);
    return q;
}

} // namespace kp

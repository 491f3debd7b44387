#include "kp/ball_bodies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kp {

namespace {

std::vector<planar::P2> as_p2(const Configuration& c) {
    std::vector<planar::P2> out(c.points.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {c.points[i][0], c.points[i][1]};
    return out;
}

void require_point_dim(const BallIntersection& body, const Point& y) {
    if (static_cast<int>(y.size()) != body.centers.dim)
        throw std::invalid_argument("ball body query: dimension mismatch");
}

double max_center_distance(const BallIntersection& body, const Point& y) {
    double worst = 0.0;
    for (const auto& x : body.centers.points) worst = std::max(worst, dist(x, y));
    return worst;
}

// min over z in the hyperplane {<u,z> = t} of max_i |z - x_i|^2, solved by
// enumerating candidate active sets of the equivalent min-max program
// min_y max_i (|y - a_i|^2 + w_i) in hyperplane coordinates. The optimum is
// a convex combination of the active a_i, so scanning subsets of size
// <= dim+1 and keeping the best stationary point is exact. Falls back to
// subgradient descent when the instance is too large to enumerate.
double min_max_shifted_sqdist(const std::vector<Point>& a, const std::vector<double>& w) {
    const std::size_t n = a.size();
    const std::size_t dim = a[0].size();

    auto objective = [&](const Point& y) {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, dist2(y, a[i]) + w[i]);
        return worst;
    };

    double best = std::numeric_limits<double>::infinity();
    const std::size_t max_size = std::min(n, dim + 1);

    if (n <= 25) {
        std::vector<int> subset;
        auto solve_subset = [&]() {
            const std::size_t m = subset.size();
            if (m == 1) {
                best = std::min(best, objective(a[subset[0]]));
                return;
            }
            // Unknowns mu_1..mu_m with y = sum mu_i a_i, sum mu = 1 and all
            // g_i(y) = |y - a_i|^2 + w_i equal on the subset. g_i - g_1 = 0
            // gives m-1 linear equations in y, hence in mu.
            std::vector<std::vector<double>> mat(m, std::vector<double>(m, 0.0));
            std::vector<double> rhs(m, 0.0);
            for (std::size_t r = 1; r < m; ++r) {
                const Point& ai = a[subset[r]];
                const Point& a0 = a[subset[0]];
                // -2 <a_i - a_0, y> + |a_i|^2 - |a_0|^2 + w_i - w_0 = 0
                for (std::size_t c = 0; c < m; ++c)
                    mat[r][c] = -2.0 * (dot(ai, a[subset[c]]) - dot(a0, a[subset[c]]));
                rhs[r] = -(dot(ai, ai) - dot(a0, a0) + w[subset[r]] - w[subset[0]]);
            }
            for (std::size_t c = 0; c < m; ++c) mat[0][c] = 1.0;
            rhs[0] = 1.0;
            std::vector<double> mu;
            if (!solve_linear(mat, rhs, mu, 1e-11)) return;
            Point y(dim, 0.0);
            for (std::size_t c = 0; c < m; ++c)
                for (std::size_t k = 0; k < dim; ++k) y[k] += mu[c] * a[subset[c]][k];
            best = std::min(best, objective(y));
        };
        auto rec = [&](auto&& self, std::size_t start, std::size_t want) -> void {
            if (subset.size() == want) {
                solve_subset();
                return;
            }
            for (std::size_t i = start; i + (want - subset.size()) <= n; ++i) {
                subset.push_back(static_cast<int>(i));
                self(self, i + 1, want);
                subset.pop_back();
            }
        };
        for (std::size_t k = 1; k <= max_size; ++k) rec(rec, 0, k);
        return best;
    }

    // Large instance: subgradient descent on the strongly convex objective.
    Point y(dim, 0.0);
    for (const auto& ai : a)
        for (std::size_t k = 0; k < dim; ++k) y[k] += ai[k] / static_cast<double>(n);
    double fy = objective(y);
    best = fy;
    Point best_y = y;
    for (int it = 1; it <= 20000; ++it) {
        std::size_t arg = 0;
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const double v = dist2(y, a[i]) + w[i];
            if (v > worst) {
                worst = v;
                arg = i;
            }
        }
        const double step = 0.5 / it; // strongly convex rate
        for (std::size_t k = 0; k < dim; ++k) y[k] -= step * 2.0 * (y[k] - a[arg][k]);
        fy = objective(y);
        if (fy < best) {
            best = fy;
            best_y = y;
        }
    }
    return best;
}

// Feasibility of {z : <u,z> = t} intersected with B[X, rho].
bool slice_feasible(const BallIntersection& body, const Point& u, double t, double slack) {
    const int d = body.centers.dim;
    // Hyperplane coordinates via a Householder frame mapping e_1 to u.
    Point v = u;
    v[0] -= 1.0;
    const double vn = norm(v);
    auto to_frame = [&](const Point& x) {
        // Apply H = I - 2 vv^T / |v|^2 (symmetric, H e_1 = u, H u = e_1).
        Point r = x;
        if (vn > 1e-12) {
            const double f = 2.0 * dot(v, x) / (vn * vn);
            for (int k = 0; k < d; ++k) r[k] -= f * v[k];
        }
        return r;
    };
    const std::size_t n = body.centers.points.size();
    std::vector<Point> a(n, Point(d - 1));
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point h = to_frame(body.centers.points[i]);
        for (int k = 1; k < d; ++k) a[i][k - 1] = h[k];
        const double beta = h[0] - t; // <x_i, u> - t
        w[i] = beta * beta;
    }
    return min_max_shifted_sqdist(a, w) <= body.radius * body.radius + slack;
}

} // namespace

bool nonempty(const BallIntersection& body, double tol) {
    body.centers.validate();
    return circumball(body.centers).radius <= body.radius + tol;
}

bool contains(const BallIntersection& body, const Point& y, double tol) {
    require_point_dim(body, y);
    return max_center_distance(body, y) <= body.radius + tol;
}

double support(const BallIntersection& body, const Point& u, double tol) {
    (void)tol; // the evaluator resolves to ~1e-10 relative, well inside any sane tol
    return SupportEvaluator(body)(u);
}

SupportEvaluator::SupportEvaluator(const BallIntersection& body) : body_(body) {
    body_.centers.validate();
    if (!nonempty(body_)) throw std::invalid_argument("support: empty ball intersection");
    if (body_.centers.dim == 2) {
        boundary_ = planar::intersect_disks(as_p2(body_.centers), body_.radius);
        planar_ = true;
    }
}

double SupportEvaluator::operator()(const Point& u) const {
    if (static_cast<int>(u.size()) != body_.centers.dim)
        throw std::invalid_argument("support: direction dimension mismatch");
    if (body_.centers.size() == 1)
        return dot(body_.centers.points[0], u) + body_.radius * norm(u);
    if (planar_) return planar::support_of(boundary_, {u[0], u[1]});

    // General d: bisect the support value between an interior point's value
    // and the single-ball upper bound; each test is a slice feasibility.
    const Circumball cb = circumball(body_.centers);
    double lo = dot(cb.center, u);
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& x : body_.centers.points) hi = std::min(hi, dot(x, u) + body_.radius);
    if (hi <= lo) return hi;
    const double slack = 1e-12 * body_.radius * body_.radius;
    for (int it = 0; it < 80 && hi - lo > 1e-10 * std::max(1.0, std::fabs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (slice_feasible(body_, u, mid, slack))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double farthest_point_distance(const BallIntersection& body, const Point& y, double tol) {
    body.centers.validate();
    require_point_dim(body, y);
    if (!nonempty(body)) throw std::invalid_argument("farthest_point_distance: empty body");
    if (body.centers.dim == 2)
        return planar::farthest_distance(planar::intersect_disks(as_p2(body.centers), body.radius),
                                         {y[0], y[1]});

    const double rho = body.radius;
    double upper = std::numeric_limits<double>::infinity();
    for (const auto& x : body.centers.points) upper = std::min(upper, dist(x, y) + rho);

    // Lower bound by ray shooting from the circumcenter (always feasible),
    // refined around the best direction found.
    const Circumball cb = circumball(body.centers);
    const int d = body.centers.dim;
    auto boundary_hit = [&](const Point& dir) {
        double tmax = std::numeric_limits<double>::infinity();
        for (const auto& x : body.centers.points) {
            const Point cx = sub(cb.center, x);
            const double b = dot(dir, cx);
            const double c = dot(cx, cx) - rho * rho;
            const double disc = b * b - c;
            const double root = -b + std::sqrt(std::max(0.0, disc));
            tmax = std::min(tmax, std::max(0.0, root));
        }
        return add(cb.center, scaled(dir, tmax));
    };

    Rng rng(0xfa7ULL);
    double lower = dist(cb.center, y);
    Point best_dir;
    for (int s = 0; s < 4000; ++s) {
        const Point dir = rng.unit_vector(d);
        const double v = dist(boundary_hit(dir), y);
        if (v > lower) {
            lower = v;
            best_dir = dir;
        }
    }
    if (!best_dir.empty()) {
        double sigma = 0.5;
        for (int s = 0; s < 4000; ++s) {
            Point dir = best_dir;
            for (auto& c : dir) c += sigma * rng.normal();
            const double nn = norm(dir);
            if (nn < 1e-12) continue;
            dir = scaled(dir, 1.0 / nn);
            const double v = dist(boundary_hit(dir), y);
            if (v > lower) {
                lower = v;
                best_dir = dir;
            } else {
                sigma *= 0.999;
            }
        }
    }
    if (upper - lower > tol)
        throw std::runtime_error("farthest_point_distance: certified gap " +
                                 std::to_string(upper - lower) + " exceeds tolerance");
    return 0.5 * (lower + upper);
}

bool spindle_hull_contains(const SpindleHull& hull, const Point& y, double tol) {
    hull.generators.validate();
    if (static_cast<int>(y.size()) != hull.generators.dim)
        throw std::invalid_argument("spindle_hull_contains: dimension mismatch");
    BallIntersection body{hull.generators, hull.radius};
    if (!nonempty(body))
        throw std::invalid_argument("spindle_hull_contains: circumradius exceeds rho");
    const double loose = hull.generators.dim == 2 ? tol : std::max(tol, 5e-3);
    return farthest_point_distance(body, y, loose) <= hull.radius + tol;
}

FixedPointReport check_spindle_fixed_point(const Configuration& x, double rho,
                                           std::uint64_t sample_count, std::uint64_t seed,
                                           double tol) {
    x.validate();
    BallIntersection body{x, rho};
    if (!nonempty(body)) throw std::invalid_argument("check_spindle_fixed_point: cr(X) > rho");
    if (x.dim != 2)
        throw std::invalid_argument("check_spindle_fixed_point: exact certification needs d = 2");

    const planar::DiskBoundary hull = planar::spindle_hull_boundary(x, rho);
    const Circumball cb = circumball(x);
    Box box{Point(x.dim), Point(x.dim)};
    for (int k = 0; k < x.dim; ++k) {
        box.lo[k] = cb.center[k] - cb.radius - rho;
        box.hi[k] = cb.center[k] + cb.radius + rho;
    }

    FixedPointReport report;
    report.seed = seed;
    Rng rng(seed);
    for (std::uint64_t s = 0; s < sample_count; ++s) {
        const Point y = box.sample(rng);
        const double d_direct = max_center_distance(body, y);
        const double d_hull = planar::farthest_distance(hull, {y[0], y[1]});
        ++report.samples;
        const double m1 = d_direct - rho;
        const double m2 = d_hull - rho;
        if ((m1 > tol && m2 < -tol) || (m1 < -tol && m2 > tol)) {
            ++report.disagreements;
            report.worst_margin = std::max(report.worst_margin, std::min(std::fabs(m1), std::fabs(m2)));
        }
    }
    return report;
}

CoveringReport check_ball_covering_containment(const Configuration& q, double mu,
                                               std::uint64_t sample_count, std::uint64_t seed) {
    q.validate();
    if (!(mu > 0.0)) throw std::invalid_argument("check_ball_covering_containment: mu > 0 required");
    BallIntersection body{q, 1.0};
    if (!nonempty(body)) throw std::invalid_argument("check_ball_covering_containment: B[q] empty");

    // Tight sampling box: B[q,1] sits inside the intersection of the
    // per-center boxes.
    Box box{Point(q.dim, -std::numeric_limits<double>::infinity()),
            Point(q.dim, std::numeric_limits<double>::infinity())};
    for (const auto& c : q.points)
        for (int k = 0; k < q.dim; ++k) {
            box.lo[k] = std::max(box.lo[k], c[k] - 1.0);
            box.hi[k] = std::min(box.hi[k], c[k] + 1.0);
        }

    CoveringReport report;
    report.seed = seed;
    report.worst_slack = std::numeric_limits<double>::infinity();
    Rng rng(seed);
    for (std::uint64_t s = 0; s < sample_count; ++s) {
        const Point y = box.sample(rng);
        if (!contains(body, y, 0.0)) continue;
        ++report.members_tested;
        // sup over w in B[q_i, mu] of |y - w| equals |y - q_i| + mu; the
        // outer body needs that below 1 + mu for every i.
        const double reach = max_center_distance(body, y) + mu;
        const double slack = (1.0 + mu) - reach;
        report.worst_slack = std::min(report.worst_slack, slack);
        if (slack < 0.0) ++report.failures;
    }
    if (report.members_tested == 0) report.worst_slack = 0.0;
    return report;
}

} // namespace kp

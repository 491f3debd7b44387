#include "kp/planar.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace kp::planar {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;
constexpr double kCoincidentTol = 1e-12; // duplicated centers/disks collapse below this

double wrap_angle(double a) {
    a = std::fmod(a, kTau);
    if (a < 0.0) a += kTau;
    return a;
}

bool angle_in_arc(double theta, double a0, double a1) {
    const double t = a0 + wrap_angle(theta - a0);
    return t <= a1 + 1e-12;
}

P2 arc_point(const Arc& a, double theta) {
    return {a.center.x + a.r * std::cos(theta), a.center.y + a.r * std::sin(theta)};
}

double dist2(const P2& a, const P2& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double dist(const P2& a, const P2& b) { return std::sqrt(dist2(a, b)); }

// Sorted disjoint closed subintervals of [0, 2pi].
using Intervals = std::vector<std::pair<double, double>>;

Intervals full_circle() { return {{0.0, kTau}}; }

// Circular interval [center - halfw, center + halfw] as linear pieces.
Intervals circ_interval(double center, double halfw) {
    if (halfw <= 0.0) return {};
    if (halfw >= 0.5 * kTau - 1e-15) return full_circle();
    const double lo = wrap_angle(center - halfw);
    const double hi = lo + 2.0 * halfw;
    if (hi <= kTau) return {{lo, hi}};
    return {{0.0, hi - kTau}, {lo, kTau}};
}

Intervals intersect_intervals(const Intervals& a, const Intervals& b) {
    Intervals out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::max(a[i].first, b[j].first);
        const double hi = std::min(a[i].second, b[j].second);
        if (lo <= hi) out.emplace_back(lo, hi);
        if (a[i].second < b[j].second)
            ++i;
        else
            ++j;
    }
    return out;
}

void subtract_interval(Intervals& cur, double lo, double hi) {
    Intervals out;
    out.reserve(cur.size() + 1);
    for (const auto& [l, h] : cur) {
        if (hi <= l || lo >= h) {
            out.emplace_back(l, h);
            continue;
        }
        if (lo > l) out.emplace_back(l, lo);
        if (hi < h) out.emplace_back(hi, h);
    }
    cur = std::move(out);
}

std::vector<P2> dedup_points(const std::vector<P2>& pts, double tol) {
    std::vector<P2> out;
    for (const auto& p : pts) {
        bool seen = false;
        for (const auto& q : out)
            if (dist(p, q) <= tol) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(p);
    }
    return out;
}

// Collect per-circle feasible angular intervals into arcs, healing the
// artificial split at angle 0 so arc endpoints are true corners.
void emit_arcs(DiskBoundary& body, int source, const P2& center, double r, Intervals feasible) {
    if (feasible.empty()) return;
    if (feasible.size() == 1 && feasible[0].first <= 1e-15 && feasible[0].second >= kTau - 1e-15) {
        body.arcs.push_back({center, r, 0.0, kTau, source});
        return;
    }
    // Join a piece ending at 2pi with one starting at 0.
    if (feasible.size() >= 2 && feasible.front().first <= 1e-15 &&
        feasible.back().second >= kTau - 1e-15) {
        feasible.back().second = feasible.front().second + kTau;
        feasible.erase(feasible.begin());
    }
    for (const auto& [a0, a1] : feasible) {
        const P2 p0 = arc_point({center, r, 0, 0, source}, a0);
        const P2 p1 = arc_point({center, r, 0, 0, source}, a1);
        body.vertices.push_back(p0);
        body.vertices.push_back(p1);
        if (a1 - a0 > 1e-14) body.arcs.push_back({center, r, a0, a1, source});
    }
}

} // namespace

double PlanarMeasure::intrinsic(int k) const {
    if (k == 1) return perimeter / 2.0;
    if (k == 2) return area;
    throw std::invalid_argument("PlanarMeasure::intrinsic: k must be 1 or 2");
}

DiskBoundary intersect_disks(const std::vector<P2>& centers, double rho) {
    if (centers.empty()) throw std::invalid_argument("intersect_disks: no centers");
    if (!(rho > 0.0)) throw std::invalid_argument("intersect_disks: rho must be positive");
    const std::vector<P2> U = dedup_points(centers, kCoincidentTol);

    DiskBoundary body;
    if (U.size() == 1) {
        body.kind = DiskBoundary::Kind::Region;
        body.arcs.push_back({U[0], rho, 0.0, kTau, 0});
        return body;
    }

    std::vector<Point> pts(U.size());
    for (std::size_t i = 0; i < U.size(); ++i) pts[i] = {U[i].x, U[i].y};
    const Circumball cb = circumball(pts);
    if (cb.radius > rho + 1e-12 * std::max(1.0, rho)) {
        body.kind = DiskBoundary::Kind::Empty;
        return body;
    }
    if (cb.radius >= rho - 1e-12 * std::max(1.0, rho)) {
        body.kind = DiskBoundary::Kind::Point;
        body.point = {cb.center[0], cb.center[1]};
        return body;
    }

    body.kind = DiskBoundary::Kind::Region;
    for (std::size_t i = 0; i < U.size(); ++i) {
        Intervals feasible = full_circle();
        for (std::size_t j = 0; j < U.size() && !feasible.empty(); ++j) {
            if (j == i) continue;
            const double d = dist(U[i], U[j]);
            const double t = std::clamp(d / (2.0 * rho), -1.0, 1.0);
            const double halfw = std::acos(t);
            const double phi = std::atan2(U[j].y - U[i].y, U[j].x - U[i].x);
            feasible = intersect_intervals(feasible, circ_interval(phi, halfw));
        }
        emit_arcs(body, static_cast<int>(i), U[i], rho, feasible);
    }
    body.vertices = dedup_points(body.vertices, 1e-9);
    if (body.arcs.empty()) {
        // Sliver collapsed numerically; report the circumcenter as a point body.
        body.kind = DiskBoundary::Kind::Point;
        body.point = {cb.center[0], cb.center[1]};
        body.vertices.clear();
    }
    return body;
}

DiskBoundary union_disks(const std::vector<P2>& centers, const std::vector<double>& radii) {
    if (centers.empty()) throw std::invalid_argument("union_disks: no disks");
    if (centers.size() != radii.size()) throw std::invalid_argument("union_disks: size mismatch");
    for (double r : radii)
        if (!(r > 0.0)) throw std::invalid_argument("union_disks: radii must be positive");

    // Deduplicate coincident disks and drop disks contained in another.
    std::vector<P2> cs;
    std::vector<double> rs;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < centers.size() && !drop; ++j) {
            if (i == j) continue;
            const double d = dist(centers[i], centers[j]);
            if (d <= kCoincidentTol && std::fabs(radii[i] - radii[j]) <= kCoincidentTol) {
                if (j < i) drop = true; // keep the first of a coincident family
            } else if (d + radii[i] <= radii[j] + kCoincidentTol) {
                drop = true; // contained in disk j
            }
        }
        if (!drop) {
            cs.push_back(centers[i]);
            rs.push_back(radii[i]);
        }
    }

    DiskBoundary body;
    body.kind = DiskBoundary::Kind::Region;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        Intervals feasible = full_circle();
        for (std::size_t j = 0; j < cs.size() && !feasible.empty(); ++j) {
            if (j == i) continue;
            const double d = dist(cs[i], cs[j]);
            if (d >= rs[i] + rs[j] - 1e-15) continue; // tangent or disjoint: point contact, no arc
            const double t = (rs[i] * rs[i] + d * d - rs[j] * rs[j]) / (2.0 * rs[i] * d);
            if (t >= 1.0) continue;
            if (t <= -1.0) {
                feasible.clear();
                break;
            }
            const double halfw = std::acos(t);
            const double phi = std::atan2(cs[j].y - cs[i].y, cs[j].x - cs[i].x);
            for (const auto& [lo, hi] : circ_interval(phi, halfw)) subtract_interval(feasible, lo, hi);
        }
        emit_arcs(body, static_cast<int>(i), cs[i], rs[i], feasible);
    }
    body.vertices = dedup_points(body.vertices, 1e-9);
    return body;
}

PlanarMeasure measure_of(const DiskBoundary& b) {
    PlanarMeasure m;
    if (b.kind != DiskBoundary::Kind::Region) return m;
    for (const Arc& a : b.arcs) {
        const double da = a.a1 - a.a0;
        m.perimeter += a.r * da;
        m.area += 0.5 * (a.r * a.r * da +
                         a.r * (a.center.x * (std::sin(a.a1) - std::sin(a.a0)) -
                                a.center.y * (std::cos(a.a1) - std::cos(a.a0))));
    }
    if (m.area < 0.0 && m.area > -1e-9) m.area = 0.0;
    return m;
}

double farthest_distance(const DiskBoundary& b, const P2& y) {
    if (b.kind == DiskBoundary::Kind::Empty)
        throw std::invalid_argument("farthest_distance: empty body");
    if (b.kind == DiskBoundary::Kind::Point) return dist(b.point, y);
    double best = 0.0;
    for (const Arc& a : b.arcs) {
        best = std::max(best, dist(arc_point(a, a.a0), y));
        best = std::max(best, dist(arc_point(a, a.a1), y));
        const double vx = a.center.x - y.x, vy = a.center.y - y.y;
        const double vn = std::sqrt(vx * vx + vy * vy);
        if (vn < 1e-15) {
            best = std::max(best, a.r);
            continue;
        }
        const double theta = std::atan2(vy, vx);
        if (angle_in_arc(theta, a.a0, a.a1)) best = std::max(best, vn + a.r);
    }
    for (const P2& v : b.vertices) best = std::max(best, dist(v, y));
    return best;
}

double support_of(const DiskBoundary& b, const P2& u) {
    if (b.kind == DiskBoundary::Kind::Empty) throw std::invalid_argument("support_of: empty body");
    if (b.kind == DiskBoundary::Kind::Point) return b.point.x * u.x + b.point.y * u.y;
    const double un = std::sqrt(u.x * u.x + u.y * u.y);
    double best = -std::numeric_limits<double>::infinity();
    for (const Arc& a : b.arcs) {
        const P2 p0 = arc_point(a, a.a0), p1 = arc_point(a, a.a1);
        best = std::max(best, p0.x * u.x + p0.y * u.y);
        best = std::max(best, p1.x * u.x + p1.y * u.y);
        const double theta = std::atan2(u.y, u.x);
        if (angle_in_arc(theta, a.a0, a.a1))
            best = std::max(best, a.center.x * u.x + a.center.y * u.y + a.r * un);
    }
    return best;
}

PlanarMeasure disk_intersection_measure(const Configuration& config, double rho) {
    config.validate();
    if (config.dim != 2) throw std::invalid_argument("disk_intersection_measure: needs d = 2");
    std::vector<P2> cs(config.points.size());
    for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = {config.points[i][0], config.points[i][1]};
    return measure_of(intersect_disks(cs, rho));
}

PlanarMeasure disk_union_measure(const Configuration& config, double rho) {
    config.validate();
    if (config.dim != 2) throw std::invalid_argument("disk_union_measure: needs d = 2");
    std::vector<P2> cs(config.points.size());
    for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = {config.points[i][0], config.points[i][1]};
    return measure_of(union_disks(cs, std::vector<double>(cs.size(), rho)));
}

// --- spindle hulls ------------------------------------------------------------

namespace {

DiskBoundary spindle_boundary_unchecked(const std::vector<P2>& pts, double rho,
                                        const Circumball& cb) {
    DiskBoundary body;
    if (pts.size() == 1) {
        body.kind = DiskBoundary::Kind::Point;
        body.point = pts[0];
        return body;
    }
    if (cb.radius >= rho - 1e-12 * std::max(1.0, rho)) {
        // The intersection body degenerates to the circumcenter; the hull is
        // the full disk of radius rho around it.
        body.kind = DiskBoundary::Kind::Region;
        body.arcs.push_back({{cb.center[0], cb.center[1]}, rho, 0.0, kTau, 0});
        return body;
    }
    const DiskBoundary inter = intersect_disks(pts, rho);
    if (inter.kind == DiskBoundary::Kind::Point) {
        body.kind = DiskBoundary::Kind::Region;
        body.arcs.push_back({inter.point, rho, 0.0, kTau, 0});
        return body;
    }
    if (inter.vertices.size() < 2)
        throw std::runtime_error("spindle_hull_boundary: degenerate intersection body");
    return intersect_disks(inter.vertices, rho);
}

// The dual construction above (hull arcs centered at the vertices of the
// intersection body) is validated once per process against the Monte Carlo
// oracle before any caller may rely on it.
void run_spindle_self_test() {
    Rng rng(0x51aeb007ULL);
    for (int inst = 0; inst < 50; ++inst) {
        const double rho = rng.uniform(0.6, 1.8);
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);
        std::vector<P2> pts(n);
        for (auto& p : pts) {
            const auto v = rng.in_ball(2, 0.8 * rho);
            p = {v[0], v[1]};
        }
        const std::vector<P2> u = dedup_points(pts, kCoincidentTol);
        std::vector<Point> aspts(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) aspts[i] = {u[i].x, u[i].y};
        const Circumball cb = circumball(aspts);
        const DiskBoundary hull = spindle_boundary_unchecked(u, rho, cb);
        const PlanarMeasure exact = measure_of(hull);

        const DiskBoundary inter = intersect_disks(u, rho);
        Box box{{cb.center[0] - rho, cb.center[1] - rho}, {cb.center[0] + rho, cb.center[1] + rho}};
        const auto member = [&](const Point& y) {
            return farthest_distance(inter, {y[0], y[1]}) <= rho;
        };
        const McEstimate mc = mc_volume(member, box, 20000, derive_seed(77, inst));
        const double gap = std::fabs(mc.value - exact.area);
        if (gap > 5.0 * mc.stderr_ + 1e-9)
            throw std::runtime_error(
                "spindle hull duality self-test failed: exact area " + std::to_string(exact.area) +
                " vs Monte Carlo " + std::to_string(mc.value) + " +- " + std::to_string(mc.stderr_));
    }
}

void ensure_spindle_self_test() {
    static std::once_flag flag;
    std::call_once(flag, run_spindle_self_test);
}

} // namespace

DiskBoundary spindle_hull_boundary(const Configuration& config, double rho) {
    config.validate();
    if (config.dim != 2) throw std::invalid_argument("spindle_hull_boundary: needs d = 2");
    if (!(rho > 0.0)) throw std::invalid_argument("spindle_hull_boundary: rho must be positive");
    std::vector<P2> cs(config.points.size());
    for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = {config.points[i][0], config.points[i][1]};
    const std::vector<P2> u = dedup_points(cs, kCoincidentTol);
    std::vector<Point> pts(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) pts[i] = {u[i].x, u[i].y};
    const Circumball cb = circumball(pts);
    if (cb.radius > rho + 1e-9 * std::max(1.0, rho))
        throw std::invalid_argument("spindle_hull_boundary: circumradius exceeds rho");
    ensure_spindle_self_test();
    return spindle_boundary_unchecked(u, rho, cb);
}

PlanarMeasure spindle_hull_measure(const Configuration& config, double rho) {
    return measure_of(spindle_hull_boundary(config, rho));
}

// --- convex polygons ----------------------------------------------------------

namespace {

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

} // namespace

double polygon_area(const ConvexPolygon& poly) {
    const auto& v = poly.v;
    if (v.size() < 3) return 0.0;
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const P2& p = v[i];
        const P2& q = v[(i + 1) % v.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

double polygon_perimeter(const ConvexPolygon& poly) {
    const auto& v = poly.v;
    if (v.size() < 2) return 0.0;
    double len = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) len += dist(v[i], v[(i + 1) % v.size()]);
    return len;
}

bool polygon_contains(const ConvexPolygon& poly, const P2& p, double tol) {
    const auto& v = poly.v;
    if (v.size() < 3) return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const P2& a = v[i];
        const P2& b = v[(i + 1) % v.size()];
        const double ex = b.x - a.x, ey = b.y - a.y;
        const double elen = std::sqrt(ex * ex + ey * ey);
        if (elen < 1e-300) continue;
        const double sdist = cross(ex, ey, p.x - a.x, p.y - a.y) / elen;
        if (sdist < -tol) return false;
    }
    return true;
}

std::optional<ConvexPolygon> intersect_convex_polygons(const std::vector<ConvexPolygon>& polys) {
    if (polys.empty()) return std::nullopt;
    ConvexPolygon cur = polys[0];
    for (std::size_t pi = 1; pi < polys.size(); ++pi) {
        for (std::size_t ei = 0; ei < polys[pi].v.size(); ++ei) {
            const P2& a = polys[pi].v[ei];
            const P2& b = polys[pi].v[(ei + 1) % polys[pi].v.size()];
            const double ex = b.x - a.x, ey = b.y - a.y;
            ConvexPolygon next;
            const std::size_t n = cur.v.size();
            for (std::size_t i = 0; i < n; ++i) {
                const P2& p = cur.v[i];
                const P2& q = cur.v[(i + 1) % n];
                const double sp = cross(ex, ey, p.x - a.x, p.y - a.y);
                const double sq = cross(ex, ey, q.x - a.x, q.y - a.y);
                if (sp >= 0.0) next.v.push_back(p);
                if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0)) {
                    const double t = sp / (sp - sq);
                    next.v.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
                }
            }
            cur = std::move(next);
            if (cur.v.size() < 3) return std::nullopt;
        }
    }
    return cur;
}

namespace {

// Parameter range of segment [A,B] inside the closed polygon, or nullopt.
// Sub-segments running along the polygon boundary count as inside so the
// caller can resolve them with the collinear-overlap rules.
std::optional<std::pair<double, double>> clip_segment(const P2& A, const P2& B,
                                                      const ConvexPolygon& poly) {
    constexpr double tol = 1e-12;
    double t0 = 0.0, t1 = 1.0;
    for (std::size_t i = 0; i < poly.v.size(); ++i) {
        const P2& c = poly.v[i];
        const P2& d = poly.v[(i + 1) % poly.v.size()];
        const double ex = d.x - c.x, ey = d.y - c.y;
        const double elen = std::sqrt(ex * ex + ey * ey);
        if (elen < 1e-300) continue;
        // Signed distance of the endpoints to the edge line, positive inside.
        const double s0 = cross(ex, ey, A.x - c.x, A.y - c.y) / elen;
        const double s1 = cross(ex, ey, B.x - c.x, B.y - c.y) / elen;
        if (s0 < -tol && s1 < -tol) return std::nullopt;
        if (s0 >= -tol && s1 >= -tol) continue; // inside or on the line
        const double t_cross = s0 / (s0 - s1);
        if (s0 < s1)
            t0 = std::max(t0, t_cross);
        else
            t1 = std::min(t1, t_cross);
    }
    if (t0 >= t1) return std::nullopt;
    return std::make_pair(t0, t1);
}

void add_interval(std::vector<std::pair<double, double>>& iv, double lo, double hi) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (lo < hi) iv.emplace_back(lo, hi);
}

} // namespace

PolygonUnionMeasure polygon_union_measure(const std::vector<ConvexPolygon>& polys,
                                          std::uint64_t seed, double stderr_frac) {
    if (polys.empty()) throw std::invalid_argument("polygon_union_measure: no polygons");
    for (const auto& poly : polys)
        if (poly.v.size() < 3 || polygon_area(poly) <= 0.0)
            throw std::invalid_argument("polygon_union_measure: degenerate or clockwise polygon");

    PolygonUnionMeasure out;

    // Exact perimeter via per-edge clipping.
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const auto& vi = polys[i].v;
        for (std::size_t e = 0; e < vi.size(); ++e) {
            const P2& A = vi[e];
            const P2& B = vi[(e + 1) % vi.size()];
            const double len = dist(A, B);
            if (len < 1e-300) continue;
            const double dirx = (B.x - A.x) / len, diry = (B.y - A.y) / len;
            std::vector<std::pair<double, double>> covered;
            for (std::size_t j = 0; j < polys.size(); ++j) {
                if (j == i) continue;
                const auto range = clip_segment(A, B, polys[j]);
                if (!range) continue;
                // Sub-ranges running along an edge of polygon j are boundary,
                // not interior: decide them by orientation / index.
                std::vector<std::pair<double, double>> on_boundary;
                const auto& vj = polys[j].v;
                for (std::size_t f = 0; f < vj.size(); ++f) {
                    const P2& C = vj[f];
                    const P2& D = vj[(f + 1) % vj.size()];
                    const double flen = dist(C, D);
                    if (flen < 1e-300) continue;
                    const double fx = (D.x - C.x) / flen, fy = (D.y - C.y) / flen;
                    if (std::fabs(cross(dirx, diry, fx, fy)) > 1e-9) continue;
                    if (std::fabs(cross(dirx, diry, C.x - A.x, C.y - A.y)) > 1e-9) continue;
                    double s0 = ((C.x - A.x) * dirx + (C.y - A.y) * diry) / len;
                    double s1 = ((D.x - A.x) * dirx + (D.y - A.y) * diry) / len;
                    if (s0 > s1) std::swap(s0, s1);
                    const double lo = std::max({s0, range->first, 0.0});
                    const double hi = std::min({s1, range->second, 1.0});
                    if (lo >= hi) continue;
                    const bool same_dir = dirx * fx + diry * fy > 0.0;
                    if (!same_dir || j < i) add_interval(covered, lo, hi);
                    add_interval(on_boundary, lo, hi);
                }
                // Everything in the clipped range that is not on polygon j's
                // boundary is strictly interior to it.
                std::vector<std::pair<double, double>> interior{{range->first, range->second}};
                for (const auto& [lo, hi] : on_boundary) {
                    std::vector<std::pair<double, double>> next;
                    for (const auto& [l, h] : interior) {
                        if (hi <= l || lo >= h) {
                            next.emplace_back(l, h);
                            continue;
                        }
                        if (lo > l) next.emplace_back(l, lo);
                        if (hi < h) next.emplace_back(hi, h);
                    }
                    interior = std::move(next);
                }
                for (const auto& [lo, hi] : interior) add_interval(covered, lo, hi);
            }
            out.perimeter += len * (1.0 - interval_union_length(covered));
        }
    }

    // Bounding box for the hit-or-miss area.
    Box box{{polys[0].v[0].x, polys[0].v[0].y}, {polys[0].v[0].x, polys[0].v[0].y}};
    for (const auto& poly : polys)
        for (const auto& p : poly.v) box.absorb({p.x, p.y});
    const auto member = [&](const Point& pt) {
        const P2 p{pt[0], pt[1]};
        for (const auto& poly : polys)
            if (polygon_contains(poly, p)) return true;
        return false;
    };

    const std::uint64_t pilot_n = 1u << 15;
    const McEstimate pilot = mc_volume(member, box, pilot_n, derive_seed(seed, 1));
    const double box_area = box.volume();
    double p_hat = box_area > 0.0 ? pilot.value / box_area : 0.0;
    // Widen toward 1/2 by three pilot sigmas so the main run cannot undershoot.
    const double sigma_p = std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat) / pilot_n));
    p_hat = (p_hat < 0.5) ? std::min(0.5, p_hat + 3.0 * sigma_p) : std::max(0.5, p_hat - 3.0 * sigma_p);
    const double var_target = stderr_frac * stderr_frac;
    std::uint64_t n = pilot_n;
    if (var_target > 0.0) {
        const double need = p_hat * (1.0 - p_hat) / var_target;
        n = std::max<std::uint64_t>(pilot_n, static_cast<std::uint64_t>(std::ceil(need)));
    }
    n = std::min<std::uint64_t>(n, 50'000'000ULL);
    const McEstimate main = mc_volume(member, box, n, derive_seed(seed, 2));
    out.area = main.value;
    out.area_stderr = main.stderr_;
    out.samples = main.samples;
    return out;
}

} // namespace kp::planar

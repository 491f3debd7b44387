#pragma once

// Exact planar measures: intersections and unions of disks, spindle convex
// hulls and unions of convex polygons, all via explicit arc/edge boundary
// construction. This module is the high-precision oracle every d=2
// verification run is checked against.

#include <cstdint>
#include <optional>
#include <vector>

#include "kp/geometry.hpp"
#include "kp/measures.hpp"

namespace kp::planar {

struct P2 {
    double x = 0.0;
    double y = 0.0;
};

/// Counterclockwise circular arc from angle a0 to a1 (a0 <= a1 <= a0 + 2pi).
struct Arc {
    P2 center;
    double r = 0.0;
    double a0 = 0.0;
    double a1 = 0.0;
    int source = -1; // index of the generating disk
};

/// Boundary of an intersection or union of disks. `vertices` are the true
/// corner points (circle-circle intersections on the boundary); a full
/// circle shows up as one arc spanning 2pi with no vertices.
struct DiskBoundary {
    enum class Kind { Empty, Point, Region };
    Kind kind = Kind::Empty;
    P2 point;                 // for Kind::Point
    std::vector<Arc> arcs;    // for Kind::Region
    std::vector<P2> vertices; // deduplicated corner points
};

struct PlanarMeasure {
    double area = 0.0;
    double perimeter = 0.0;

    /// Planar intrinsic volumes: V1 = perimeter/2, V2 = area.
    double intrinsic(int k) const;
};

/// Boundary of the intersection of congruent disks of radius rho around the
/// given centers. Duplicated centers (within 1e-12) are legal and collapse.
DiskBoundary intersect_disks(const std::vector<P2>& centers, double rho);

/// Boundary of a union of disks; radii may differ.
DiskBoundary union_disks(const std::vector<P2>& centers, const std::vector<double>& radii);

/// Area (Green's theorem over the arcs) and perimeter of a boundary.
PlanarMeasure measure_of(const DiskBoundary& b);

/// max { |y - z| : z in the region bounded by `b` } — exact: the maximum is
/// attained at an arc vertex or at the antipodal point of an arc.
double farthest_distance(const DiskBoundary& b, const P2& y);

/// Support value max { <u, z> : z in region }; u need not be normalized but
/// usually is. Exact via vertices and arc tangency points.
double support_of(const DiskBoundary& b, const P2& u);

PlanarMeasure disk_intersection_measure(const Configuration& config, double rho);

PlanarMeasure disk_union_measure(const Configuration& config, double rho);

/// Boundary of conv_rho(X) via the planar duality: its arcs have radius rho
/// and are centered at the vertices of the intersection body of X. Guarded
/// by a one-time self-test against the Monte Carlo oracle; throws
/// std::runtime_error if that self-test fails and std::invalid_argument when
/// the circumradius of X exceeds rho.
DiskBoundary spindle_hull_boundary(const Configuration& config, double rho);

PlanarMeasure spindle_hull_measure(const Configuration& config, double rho);

// --- convex polygons ---------------------------------------------------------

/// Convex polygon, vertices in counterclockwise order.
struct ConvexPolygon {
    std::vector<P2> v;
};

double polygon_area(const ConvexPolygon& poly);
double polygon_perimeter(const ConvexPolygon& poly);
bool polygon_contains(const ConvexPolygon& poly, const P2& p, double tol = 0.0);

/// Intersection of convex polygons (half-plane clipping); nullopt when empty.
std::optional<ConvexPolygon> intersect_convex_polygons(const std::vector<ConvexPolygon>& polys);

struct PolygonUnionMeasure {
    double area = 0.0;       // Monte Carlo
    double area_stderr = 0.0;
    double perimeter = 0.0;  // exact, via edge clipping
    std::uint64_t samples = 0;
};

/// Union measure of convex polygons. The perimeter is exact: each polygon
/// edge is clipped against the interiors of the others (with collinear
/// overlaps resolved so shared and duplicated edges are not double counted).
/// The area is hit-or-miss with standard error at most `stderr_frac` times
/// the bounding-box area.
PolygonUnionMeasure polygon_union_measure(const std::vector<ConvexPolygon>& polys,
                                          std::uint64_t seed, double stderr_frac = 1e-4);

} // namespace kp::planar

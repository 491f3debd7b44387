#pragma once

// Parametric unconditional convex bodies (axis boxes, scaled lp balls, cross
// polytopes and finite intersections of those) together with the axis-slice
// machinery: every line parallel to a coordinate axis meets a translated
// unconditional body in an interval centered at the translation, which is
// what makes the slice-and-compare verification of the strong-contraction
// theorem possible.

#include <optional>
#include <string>
#include <vector>

#include "kp/geometry.hpp"

namespace kp {

struct UncondBody {
    enum class Family { AxisBox, ScaledLpBall, CrossPolytope, Intersection };

    Family family = Family::AxisBox;
    std::vector<double> half_extents; // per axis, positive (unused for Intersection)
    double p = 2.0;                   // ScaledLpBall exponent, p >= 1
    std::vector<UncondBody> members;  // Intersection only

    static UncondBody axis_box(std::vector<double> half_extents);
    static UncondBody scaled_lp_ball(std::vector<double> half_extents, double p);
    static UncondBody cross_polytope(std::vector<double> half_extents);
    static UncondBody intersection(std::vector<UncondBody> members);

    int dim() const;
    void validate() const;

    /// Exact membership from the closed-form family description.
    bool member(const Point& x) const;

    /// Per-axis bounding half extents (the body sits inside the axis box).
    std::vector<double> bounding_half_extents() const;

    /// Half-length of the 1D slice {t : x with x[axis] = t is in the body}
    /// at the given transverse offsets (absolute values are taken inside, so
    /// signs do not matter). nullopt when the line misses the body.
    std::optional<double> slice_halflength(int axis, const Point& offsets) const;
};

/// A family of translated bodies p_i + K_i.
struct PlacedBodies {
    std::vector<UncondBody> bodies;
    Configuration translations;

    void validate() const;
};

/// A line parallel to coordinate axis `axis`; `coords` fixes the other
/// coordinates (the entry at `axis` is ignored).
struct AxisLine {
    int axis = 0;
    Point coords;
};

struct Slice {
    double center = 0.0;
    double halflength = 0.0;
};

/// Slice of translation + body along the line. By unconditionality the
/// interval is centered at the translation's coordinate on that axis.
std::optional<Slice> axis_slice(const UncondBody& body, const Point& translation,
                                const AxisLine& line);

/// Total length of the union of the per-body slice intervals on the line.
double union_slice_length(const PlacedBodies& placed, const AxisLine& line);

/// Length of the intersection of the per-body slices ([max lo, min hi]).
double intersection_slice_length(const PlacedBodies& placed, const AxisLine& line);

struct SlicedVolume {
    double value = 0.0;
    double error_bound = 0.0; // from comparing full and half grid resolution
    int resolution = 0;
};

/// Volume of the union of the placed bodies by midpoint quadrature over the
/// hyperplane transverse to axis 0, `resolution` cells per transverse axis.
/// Requires d >= 2 and resolution >= 2.
SlicedVolume union_volume_by_slicing(const PlacedBodies& placed, int resolution);

SlicedVolume intersection_volume_by_slicing(const PlacedBodies& placed, int resolution);

/// Exact 1D measures (bodies in E^1 are intervals).
double union_length_1d(const PlacedBodies& placed);
double intersection_length_1d(const PlacedBodies& placed);

} // namespace kp

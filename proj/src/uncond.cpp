#include "kp/uncond.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kp/measures.hpp"

namespace kp {

UncondBody UncondBody::axis_box(std::vector<double> he) {
    UncondBody b;
    b.family = Family::AxisBox;
    b.half_extents = std::move(he);
    return b;
}

UncondBody UncondBody::scaled_lp_ball(std::vector<double> he, double p) {
    UncondBody b;
    b.family = Family::ScaledLpBall;
    b.half_extents = std::move(he);
    b.p = p;
    return b;
}

UncondBody UncondBody::cross_polytope(std::vector<double> he) {
    UncondBody b;
    b.family = Family::CrossPolytope;
    b.half_extents = std::move(he);
    return b;
}

UncondBody UncondBody::intersection(std::vector<UncondBody> members) {
    UncondBody b;
    b.family = Family::Intersection;
    b.members = std::move(members);
    return b;
}

int UncondBody::dim() const {
    if (family == Family::Intersection)
        return members.empty() ? 0 : members.front().dim();
    return static_cast<int>(half_extents.size());
}

void UncondBody::validate() const {
    if (family == Family::Intersection) {
        if (members.empty()) throw std::invalid_argument("UncondBody: empty intersection");
        const int d = members.front().dim();
        for (const auto& m : members) {
            m.validate();
            if (m.dim() != d) throw std::invalid_argument("UncondBody: member dimension mismatch");
        }
        return;
    }
    if (half_extents.empty()) throw std::invalid_argument("UncondBody: no half extents");
    for (double h : half_extents)
        if (!(h > 0.0) || !std::isfinite(h))
            throw std::invalid_argument("UncondBody: half extents must be positive finite");
    if (family == Family::ScaledLpBall && !(p >= 1.0))
        throw std::invalid_argument("UncondBody: lp exponent must be >= 1");
}

bool UncondBody::member(const Point& x) const {
    if (static_cast<int>(x.size()) != dim())
        throw std::invalid_argument("UncondBody::member: dimension mismatch");
    switch (family) {
        case Family::AxisBox:
            for (std::size_t k = 0; k < x.size(); ++k)
                if (std::fabs(x[k]) > half_extents[k]) return false;
            return true;
        case Family::ScaledLpBall: {
            double s = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k)
                s += std::pow(std::fabs(x[k]) / half_extents[k], p);
            return s <= 1.0;
        }
        case Family::CrossPolytope: {
            double s = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) s += std::fabs(x[k]) / half_extents[k];
            return s <= 1.0;
        }
        case Family::Intersection:
            for (const auto& m : members)
                if (!m.member(x)) return false;
            return true;
    }
    return false;
}

std::vector<double> UncondBody::bounding_half_extents() const {
    if (family != Family::Intersection) return half_extents;
    std::vector<double> he = members.front().bounding_half_extents();
    for (std::size_t i = 1; i < members.size(); ++i) {
        const auto other = members[i].bounding_half_extents();
        for (std::size_t k = 0; k < he.size(); ++k) he[k] = std::min(he[k], other[k]);
    }
    return he;
}

std::optional<double> UncondBody::slice_halflength(int axis, const Point& offsets) const {
    if (axis < 0 || axis >= dim())
        throw std::invalid_argument("UncondBody::slice_halflength: axis out of range");
    switch (family) {
        case Family::AxisBox:
            for (int k = 0; k < dim(); ++k)
                if (k != axis && std::fabs(offsets[k]) > half_extents[k]) return std::nullopt;
            return half_extents[axis];
        case Family::ScaledLpBall: {
            double s = 0.0;
            for (int k = 0; k < dim(); ++k)
                if (k != axis) s += std::pow(std::fabs(offsets[k]) / half_extents[k], p);
            if (s > 1.0) return std::nullopt;
            return half_extents[axis] * std::pow(1.0 - s, 1.0 / p);
        }
        case Family::CrossPolytope: {
            double s = 0.0;
            for (int k = 0; k < dim(); ++k)
                if (k != axis) s += std::fabs(offsets[k]) / half_extents[k];
            if (s > 1.0) return std::nullopt;
            return half_extents[axis] * (1.0 - s);
        }
        case Family::Intersection: {
            double w = std::numeric_limits<double>::infinity();
            for (const auto& m : members) {
                const auto mw = m.slice_halflength(axis, offsets);
                if (!mw) return std::nullopt;
                w = std::min(w, *mw);
            }
            return w;
        }
    }
    return std::nullopt;
}

void PlacedBodies::validate() const {
    translations.validate();
    if (bodies.size() != translations.points.size())
        throw std::invalid_argument("PlacedBodies: body/translation count mismatch");
    for (const auto& b : bodies) {
        b.validate();
        if (b.dim() != translations.dim)
            throw std::invalid_argument("PlacedBodies: body dimension mismatch");
    }
}

std::optional<Slice> axis_slice(const UncondBody& body, const Point& translation,
                                const AxisLine& line) {
    if (static_cast<int>(translation.size()) != body.dim() ||
        static_cast<int>(line.coords.size()) != body.dim())
        throw std::invalid_argument("axis_slice: dimension mismatch");
    Point offsets(body.dim(), 0.0);
    for (int k = 0; k < body.dim(); ++k)
        if (k != line.axis) offsets[k] = line.coords[k] - translation[k];
    const auto w = body.slice_halflength(line.axis, offsets);
    if (!w) return std::nullopt;
    return Slice{translation[line.axis], *w};
}

double union_slice_length(const PlacedBodies& placed, const AxisLine& line) {
    std::vector<std::pair<double, double>> intervals;
    for (std::size_t i = 0; i < placed.bodies.size(); ++i) {
        const auto s = axis_slice(placed.bodies[i], placed.translations.points[i], line);
        if (s) intervals.emplace_back(s->center - s->halflength, s->center + s->halflength);
    }
    return interval_union_length(intervals);
}

double intersection_slice_length(const PlacedBodies& placed, const AxisLine& line) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < placed.bodies.size(); ++i) {
        const auto s = axis_slice(placed.bodies[i], placed.translations.points[i], line);
        if (!s) return 0.0;
        lo = std::max(lo, s->center - s->halflength);
        hi = std::min(hi, s->center + s->halflength);
    }
    return std::max(0.0, hi - lo);
}

namespace {

enum class SliceOp { Union, Intersection };

double slicing_pass(const PlacedBodies& placed, int resolution, SliceOp op) {
    const int d = placed.translations.dim;
    // Transverse bounding box over axes 1..d-1.
    std::vector<double> lo(d - 1, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d - 1, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < placed.bodies.size(); ++i) {
        const auto he = placed.bodies[i].bounding_half_extents();
        for (int k = 1; k < d; ++k) {
            const double c = placed.translations.points[i][k];
            lo[k - 1] = std::min(lo[k - 1], c - he[k]);
            hi[k - 1] = std::max(hi[k - 1], c + he[k]);
        }
    }
    double cell = 1.0;
    for (int k = 0; k < d - 1; ++k) cell *= (hi[k] - lo[k]) / resolution;
    if (!(cell > 0.0)) return 0.0;

    AxisLine line{0, Point(d, 0.0)};
    std::vector<int> idx(d - 1, 0);
    double total = 0.0;
    while (true) {
        for (int k = 0; k < d - 1; ++k)
            line.coords[k + 1] = lo[k] + (idx[k] + 0.5) * (hi[k] - lo[k]) / resolution;
        total += (op == SliceOp::Union) ? union_slice_length(placed, line)
                                        : intersection_slice_length(placed, line);
        int k = 0;
        for (; k < d - 1; ++k) {
            if (++idx[k] < resolution) break;
            idx[k] = 0;
        }
        if (k == d - 1) break;
    }
    return total * cell;
}

SlicedVolume volume_by_slicing(const PlacedBodies& placed, int resolution, SliceOp op) {
    placed.validate();
    if (placed.translations.dim < 2)
        throw std::invalid_argument("volume_by_slicing: needs d >= 2 (1D is exact)");
    if (resolution < 2) throw std::invalid_argument("volume_by_slicing: resolution >= 2 required");
    const double full = slicing_pass(placed, resolution, op);
    const double half = slicing_pass(placed, resolution / 2, op);
    SlicedVolume out;
    out.value = full;
    out.error_bound = std::fabs(full - half) + 1e-6 * std::fabs(full) + 1e-9;
    out.resolution = resolution;
    return out;
}

std::vector<std::pair<double, double>> intervals_1d(const PlacedBodies& placed) {
    placed.validate();
    if (placed.translations.dim != 1)
        throw std::invalid_argument("1D measures need one-dimensional bodies");
    std::vector<std::pair<double, double>> iv;
    for (std::size_t i = 0; i < placed.bodies.size(); ++i) {
        const double c = placed.translations.points[i][0];
        const double w = placed.bodies[i].bounding_half_extents()[0];
        iv.emplace_back(c - w, c + w);
    }
    return iv;
}

} // namespace

SlicedVolume union_volume_by_slicing(const PlacedBodies& placed, int resolution) {
    return volume_by_slicing(placed, resolution, SliceOp::Union);
}

SlicedVolume intersection_volume_by_slicing(const PlacedBodies& placed, int resolution) {
    return volume_by_slicing(placed, resolution, SliceOp::Intersection);
}

double union_length_1d(const PlacedBodies& placed) {
    return interval_union_length(intervals_1d(placed));
}

double intersection_length_1d(const PlacedBodies& placed) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& [l, h] : intervals_1d(placed)) {
        lo = std::max(lo, l);
        hi = std::min(hi, h);
    }
    return std::max(0.0, hi - lo);
}

} // namespace kp

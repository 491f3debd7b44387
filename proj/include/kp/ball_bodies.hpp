#pragma once

// The body B[X, rho] (intersection of congruent balls around a finite center
// set), spindle convex hulls, support queries and the containment identities
// they satisfy. Exact in the plane via the arc boundary; certified numeric
// bounds in higher dimension.

#include <cstdint>
#include <vector>

#include "kp/geometry.hpp"
#include "kp/planar.hpp"

namespace kp {

/// B[X, rho] = intersection of the closed balls of radius rho centered at
/// the points of X. Nonempty exactly when circumradius(X) <= rho.
struct BallIntersection {
    Configuration centers;
    double radius = 1.0; // the paper-style default when omitted
};

/// conv_rho(X) = B[B[X, rho], rho]; requires circumradius(X) <= rho.
struct SpindleHull {
    Configuration generators;
    double radius = 1.0;
};

bool nonempty(const BallIntersection& body, double tol = 1e-12);

/// max_i |y - x_i| <= rho + tol.
bool contains(const BallIntersection& body, const Point& y, double tol = 1e-12);

/// Support function h(u) = max { <u,z> : z in B[X,rho] }. Exact arc-based
/// evaluation in d = 2; in higher dimension a bisection over halfspace
/// feasibility, where each feasibility test is solved as a small min-max
/// program over the slicing hyperplane. Throws on an empty body.
double support(const BallIntersection& body, const Point& u, double tol = 1e-9);

/// max { |y - z| : z in B[X,rho] }. Exact in d = 2 (attained at an arc
/// vertex or an antipodal arc point). In d >= 3 returns a value certified by
/// sampling (lower) and the triangle inequality (upper) and throws when the
/// two bounds stay further apart than tol.
double farthest_point_distance(const BallIntersection& body, const Point& y, double tol = 1e-9);

/// y in conv_rho(X), decided via farthest_point_distance(B[X,rho], y) <= rho + tol.
bool spindle_hull_contains(const SpindleHull& hull, const Point& y, double tol = 1e-9);

struct FixedPointReport {
    std::uint64_t samples = 0;
    std::uint64_t disagreements = 0; // both sides certified on opposite sides of the boundary
    double worst_margin = 0.0;       // largest certified disagreement margin (0 when none)
    std::uint64_t seed = 0;
};

/// Samples the identity B[X,rho] = B[conv_rho(X), rho]: membership of y in
/// B[X,rho] must coincide with "every point of conv_rho(X) is within rho of
/// y". Exact certification in d = 2. Disagreements are counted only when
/// both sides clear the boundary by more than `tol`.
FixedPointReport check_spindle_fixed_point(const Configuration& x, double rho,
                                           std::uint64_t sample_count, std::uint64_t seed,
                                           double tol = 1e-9);

struct CoveringReport {
    std::uint64_t members_tested = 0; // samples that landed inside B[q, 1]
    std::uint64_t failures = 0;       // zero tolerance: any failure is a bug
    double worst_slack = 0.0;         // min over samples of (1 + mu) - (max_i |y - q_i| + mu)
    std::uint64_t seed = 0;
};

/// Sampled check of B[q,1] being contained in B[union_i B[q_i, mu], 1 + mu]:
/// every sampled y in B[q,1] must be within 1 + mu of every point of every
/// ball B[q_i, mu]. Throws when B[q,1] is empty.
CoveringReport check_ball_covering_containment(const Configuration& q, double mu,
                                               std::uint64_t sample_count, std::uint64_t seed);

/// Reusable exact/numeric support evaluator (builds the d = 2 arc boundary
/// once, so sweeping many directions stays cheap).
class SupportEvaluator {
public:
    explicit SupportEvaluator(const BallIntersection& body);
    double operator()(const Point& u) const;

private:
    BallIntersection body_;
    planar::DiskBoundary boundary_; // only populated in d = 2
    bool planar_ = false;
};

} // namespace kp

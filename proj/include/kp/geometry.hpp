#pragma once

// Point configurations, the contraction predicates, one-sided reflections,
// minimal enclosing balls and the random generators for uniform-contraction
// pairs. Everything downstream (ball bodies, planar measures, campaigns)
// is built on this module.

#include <optional>
#include <utility>
#include <vector>

#include "kp/linalg.hpp"
#include "kp/rng.hpp"

namespace kp {

/// Default slack for the contraction predicates. Sampled and transformed
/// coordinates carry rounding noise, so strict float inequalities are
/// meaningless; callers can pass 0 when coordinates are exact.
inline constexpr double kContractionTol = 1e-12;

/// An ordered list of N points in E^d.
struct Configuration {
    int dim = 0;
    std::vector<Point> points;

    int size() const { return static_cast<int>(points.size()); }

    /// Throws std::invalid_argument unless N >= 1, d >= 1, every point has
    /// exactly d finite coordinates.
    void validate() const;
};

struct DistanceSummary {
    double min_pairwise = 0.0; // 0 for N = 1
    double max_pairwise = 0.0;
    std::vector<std::vector<double>> matrix; // symmetric, zero diagonal
};

DistanceSummary pairwise_distances(const Configuration& config);

/// |q_i - q_j| <= |p_i - p_j| + tol for all i < j.
bool is_contraction(const Configuration& p, const Configuration& q, double tol = kContractionTol);

/// The set of admissible separating values [max pairwise of q, min pairwise
/// of p], or nullopt when that interval is empty. q is a uniform contraction
/// of p exactly when the interval is non-empty. Requires N >= 2.
std::optional<std::pair<double, double>> uniform_contraction_interval(const Configuration& p,
                                                                      const Configuration& q);

/// Per-coordinate contraction: every coordinate gap shrinks for every pair.
bool is_strong_contraction(const Configuration& p, const Configuration& q,
                           double tol = kContractionTol);

enum class HalfSide { Positive, Negative };

/// Reflect the points strictly on the chosen open side of the hyperplane
/// {x[axis] = level} through it; all other points are fixed. The image is a
/// strong contraction of the input (exactly in real arithmetic; within the
/// default predicate tolerance in floating point, since 2*level - x rounds).
/// `axis` is 0-based.
Configuration one_sided_reflection(const Configuration& config, int axis, double level,
                                   HalfSide side);

struct Circumball {
    Point center;
    double radius = 0.0;
    std::vector<int> support; // indices of the <= d+1 points certifying minimality
};

/// Minimal enclosing ball (randomized Welzl move-to-front).
Circumball circumball(const Configuration& config);
Circumball circumball(const std::vector<Point>& pts);

/// Exhaustive reference implementation: scans every support subset of size
/// <= d+1. Exponential in N; meant for d <= 3, N <= 10 cross-checks.
Circumball circumball_bruteforce(const std::vector<Point>& pts);

/// Vertices of a regular d-simplex with the given edge length, centered at
/// the origin of E^d.
std::vector<Point> regular_simplex_vertices(int dim, double edge);

struct UniformContractionPair {
    Configuration p; // min pairwise distance >= lambda
    Configuration q; // max pairwise distance <= lambda
};

/// Random pair satisfying (UC) at separating value lambda. q is i.i.d.
/// uniform in a ball of radius lambda/2; p is dart-throwing with minimum
/// pairwise distance lambda inside a ball of radius `region_scale`
/// (default lambda * (N^{1/d} + 2) when <= 0). Deterministic given the
/// seed. Throws std::runtime_error when the retry budget (N * 10^4 darts)
/// is exhausted, which signals that the region is too small.
UniformContractionPair sample_uniform_contraction_pair(int dim, int n, double lambda,
                                                       double region_scale, std::uint64_t seed);

/// Composite of `count` random one-sided reflections of p (always a strong
/// contraction of p).
Configuration random_reflection_composite(const Configuration& p, int count, Rng& rng);

/// Shrink the sorted gap sequence of one coordinate by independent random
/// factors in [0,1], leaving every other coordinate untouched (a strong
/// contraction acting on a single axis).
Configuration coordinate_gap_contraction_axis(const Configuration& p, int axis, Rng& rng);

/// Strong contraction built coordinate-wise: on each axis the sorted gap
/// sequence is shrunk by independent random factors in [0,1]. Produces
/// strong contractions that are not composites of one-sided reflections.
Configuration coordinate_gap_contraction(const Configuration& p, Rng& rng);

} // namespace kp

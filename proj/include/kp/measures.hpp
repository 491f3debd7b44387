#pragma once

// Dimension-generic quantities: unit-ball volumes kappa_d, intrinsic volumes
// of balls, hit-or-miss Monte Carlo volume, exact 1D interval unions,
// spherical cap / cone volumes, the simplex coverage density sigma_d and a
// mean-width estimator for V_1.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "kp/linalg.hpp"

namespace kp {

/// Volume of the d-dimensional unit ball, pi^{d/2} / Gamma(d/2 + 1).
double kappa(int dim);

/// k-th intrinsic volume of the d-dimensional unit ball,
/// C(d,k) * kappa_d / kappa_{d-k}. Requires 1 <= k <= d.
double ball_intrinsic(int dim, int k);

/// One hit-or-miss estimate. stderr is the binomial standard error scaled
/// by the reference (box) volume; the estimate is reproducible from seed.
struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

using MemberFn = std::function<bool(const Point&)>;

/// Hit-or-miss volume of {x in box : member(x)}. Samples are drawn in
/// fixed-size shards with seeds derived from (seed, shard index) and merged
/// in index order, so the result does not depend on the thread count.
McEstimate mc_volume(const MemberFn& member, const Box& box, std::uint64_t n, std::uint64_t seed,
                     int threads = 1);

/// Lebesgue measure of a union of closed intervals, exact via sort-and-sweep.
/// Throws on an interval with lo > hi.
double interval_union_length(const std::vector<std::pair<double, double>>& intervals);

struct CapCone {
    double cap = 0.0;       // volume of {x in B^d : x_1 >= h}
    double cone = 0.0;      // volume of conv({-e_1} ... apex at distance h): (h/d)(1-h^2)^{(d-1)/2} kappa_{d-1}
    double cap_upper = 0.0; // (1-h^2)^{(d-1)/2} / (sqrt(2 pi (d-1)) h) * kappa_d, for d >= 2
};

/// Exact spherical-cap volume (regularized incomplete beta) together with
/// the matching cone volume and the standard cap upper bound. h in (0,1).
CapCone cap_and_cone_volumes(int dim, double h);

/// Cap volume for signed cut height t in (-1, 1); t < 0 returns
/// kappa_d - cap(-t).
double cap_volume_signed(int dim, double t);

/// Regularized incomplete beta function I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

/// Fraction of a regular edge-2 simplex covered by unit balls at its
/// vertices, estimated by Dirichlet sampling inside the simplex.
McEstimate sigma_simplex_density(int dim, std::uint64_t n, std::uint64_t seed);

/// Closed form for d <= 2: sigma_1 = 1, sigma_2 = pi / (2 sqrt 3).
double sigma_closed_form(int dim);

using SupportFn = std::function<double(const Point&)>; // unit direction -> support value

/// V_1 of a convex body given by its support function, via random 1D
/// projections: V_1 = c_d * E[width along uniform direction] with c_d
/// calibrated so that V_1(B^d) = ball_intrinsic(d, 1).
McEstimate mc_intrinsic_v1(const SupportFn& support, int dim, std::uint64_t n, std::uint64_t seed);

} // namespace kp

#include "kp/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "kp/measures.hpp"

namespace kp {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
constexpr double kThresholdSlack = 1e-12; // symmetric float slack on sharp comparisons
constexpr double kPi = 3.14159265358979323846264338327950288;

double jung_factor(int d) { return std::sqrt(2.0 * d / (d + 1.0)); }
} // namespace

double nth_root(double n, int d) {
    if (d < 1) throw std::invalid_argument("nth_root: d >= 1 required");
    if (!(n > 0.0)) throw std::invalid_argument("nth_root: positive argument required");
    if (d == 1) return n;
    const double r = std::exp(std::log(n) / d);
    // Integer fast path: if n is an integral d-th power, return the exact root.
    if (n == std::floor(n) && n < 9.0e15) {
        for (long long cand : {static_cast<long long>(std::floor(r)),
                               static_cast<long long>(std::floor(r)) + 1}) {
            if (cand <= 0) continue;
            double pow_cand = 1.0;
            bool overflow = false;
            for (int i = 0; i < d; ++i) {
                pow_cand *= static_cast<double>(cand);
                if (pow_cand > 1.8e18) {
                    overflow = true;
                    break;
                }
            }
            if (!overflow && pow_cand == n) return static_cast<double>(cand);
        }
    }
    return r;
}

BoundReport f_lower(int d, int k, double lambda) {
    if (d < 1 || k < 1 || k > d) throw std::invalid_argument("f_lower: need 1 <= k <= d");
    BoundReport r;
    r.name = "f_lower";
    r.d = d;
    r.k = k;
    r.lambda = lambda;
    r.applicable = lambda > 0.0 && lambda <= kSqrt2 + kThresholdSlack;
    if (!r.applicable) r.notes = "lambda outside (0, sqrt 2]";
    const double base = std::max(0.0, 1.0 - jung_factor(d) * lambda / 2.0);
    r.value = std::pow(base, k) * ball_intrinsic(d, k);
    return r;
}

BoundReport g_upper(int d, int k, long long n, double lambda) {
    if (d < 1 || k < 1 || k > d) throw std::invalid_argument("g_upper: need 1 <= k <= d");
    if (n < 1) throw std::invalid_argument("g_upper: N >= 1 required");
    BoundReport r;
    r.name = "g_upper";
    r.d = d;
    r.k = k;
    r.n = n;
    r.lambda = lambda;
    r.applicable = lambda > 0.0 && lambda <= kSqrt2 + kThresholdSlack;
    if (!r.applicable) r.notes = "lambda outside (0, sqrt 2]";
    const double base = 1.0 - (nth_root(static_cast<double>(n), d) - 1.0) * lambda / 2.0;
    r.value = base <= 0.0 ? 0.0 : std::pow(base, k) * ball_intrinsic(d, k);
    return r;
}

bool packing_forces_empty(int d, long long n, double lambda) {
    if (d < 1 || n < 1) throw std::invalid_argument("packing_forces_empty: bad arguments");
    if (!(lambda > 0.0)) throw std::invalid_argument("packing_forces_empty: lambda > 0 required");
    // N (lambda/2)^d >= (1 + lambda/2)^d  <=>  N^{1/d} lambda/2 >= 1 + lambda/2.
    return nth_root(static_cast<double>(n), d) * lambda / 2.0 >=
           1.0 + lambda / 2.0 - kThresholdSlack;
}

IntersectionThresholds intersection_thresholds(int d, double lambda) {
    if (d < 1) throw std::invalid_argument("intersection_thresholds: d >= 1 required");
    if (!(lambda > 0.0)) throw std::invalid_argument("intersection_thresholds: lambda > 0 required");
    IntersectionThresholds t;
    t.main = std::pow(1.0 + kSqrt2, d);
    t.part_a = std::pow(1.0 + 2.0 / lambda, d);
    t.part_b = std::pow(1.0 + jung_factor(d), d);
    t.part_b_applicable = lambda <= kSqrt2 + kThresholdSlack;
    t.min_applicable = t.part_a;
    if (t.part_b_applicable) t.min_applicable = std::min(t.min_applicable, t.part_b);
    return t;
}

UnionThresholds union_thresholds(int d, double lambda, double sigma_value, double sigma_stderr) {
    if (d < 1) throw std::invalid_argument("union_thresholds: d >= 1 required");
    if (!(lambda > 0.0)) throw std::invalid_argument("union_thresholds: lambda > 0 required");
    UnionThresholds t;
    t.trivial_regime = lambda >= 2.0 - kThresholdSlack;
    t.part_a = std::pow(1.0 + lambda / 2.0, d) * (d + 2.0) / 2.0;
    t.part_a_applicable = lambda >= kSqrt2 - kThresholdSlack && lambda < 2.0;
    t.part_b = std::pow(1.0 + 2.0 / lambda, d) * sigma_value;
    t.part_b_err = std::pow(1.0 + 2.0 / lambda, d) * sigma_stderr;
    t.part_b_applicable = lambda < kSqrt2;
    t.part_c_lambda_cap = 1.0 / (static_cast<double>(d) * d * d);
    t.part_c_n = std::pow(2.0 * d * d + 1.0, d);
    t.part_c_applicable = lambda < t.part_c_lambda_cap;
    t.main = std::pow(1.0 + 2.0 * static_cast<double>(d) * d * d, d);
    return t;
}

double isodiametric_union_upper(int d, double lambda) {
    if (d < 1) throw std::invalid_argument("isodiametric_union_upper: d >= 1 required");
    if (!(lambda > 0.0 && lambda < 2.0))
        throw std::invalid_argument("isodiametric_union_upper: lambda in (0, 2) required");
    return std::pow(1.0 + lambda / 2.0, d) * kappa(d);
}

IntersectionProofReplay replay_intersection_proof(int d, int k, long long n, double lambda) {
    IntersectionProofReplay r;
    r.f = f_lower(d, k, lambda).value;
    r.g = g_upper(d, k, n, lambda).value;
    r.margin = r.f - r.g;
    r.asserted = lambda > 0.0 && lambda <= kSqrt2 + kThresholdSlack &&
                 nth_root(static_cast<double>(n), d) - 1.0 >= jung_factor(d) - kThresholdSlack;
    return r;
}

UnionCaseCReplay replay_union_case_c(int d, double lambda) {
    if (d < 2) throw std::invalid_argument("replay_union_case_c: d >= 2 required");
    if (!(lambda > 0.0)) throw std::invalid_argument("replay_union_case_c: lambda > 0 required");
    UnionCaseCReplay r;
    const double dd = static_cast<double>(d);
    r.applicable = lambda <= 1.0 / (dd * dd * dd) + kThresholdSlack;
    r.case1_lhs = 1.0 + 2.0 * dd * lambda * std::exp(-std::pow(dd, 5) * lambda * lambda);
    r.case1_rhs = std::pow(1.0 + lambda / 2.0, d);
    r.case1_margin = r.case1_lhs - r.case1_rhs;
    r.case2_value =
        2.0 * kappa(d) * (1.0 - std::pow(1.0 - 1.0 / dd, 0.5 * (d - 1)) / std::sqrt(kPi));
    r.case2_margin = r.case2_value - 1.1 * kappa(d);
    return r;
}

} // namespace kp

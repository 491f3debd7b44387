#pragma once

// Closed-form bounds and thresholds for the uniform-contraction theorems:
// the inscribed-ball lower bound on the minimal intersection f_k, the
// packing and covering upper bounds on the maximal intersection g_k, the
// per-theorem sample-count thresholds, and numeric replays of the proof
// inequalities.

#include <string>

namespace kp {

/// One evaluated bound. `applicable` is false when the preconditions of the
/// underlying statement fail; the value is still computed formally.
struct BoundReport {
    std::string name;
    int d = 0;
    int k = 0;
    long long n = -1;      // -1 when the bound does not depend on N
    double lambda = 0.0;
    double value = 0.0;
    bool applicable = true;
    std::string notes;
};

/// N^{1/d} with an integer fast path so threshold comparisons do not drift.
double nth_root(double n, int d);

/// Lower bound on f_k(d, N, lambda): the intersection of unit balls whose
/// centers have pairwise distances <= lambda contains a ball of radius
/// 1 - sqrt(2d/(d+1)) * lambda / 2 (circumradius bound). Valid for
/// lambda in (0, sqrt 2].
BoundReport f_lower(int d, int k, double lambda);

/// Upper bound on g_k(d, N, lambda): max{0, 1 - (N^{1/d}-1) lambda/2}^k
/// times the k-th intrinsic volume of the unit ball. Valid for lambda in
/// (0, sqrt 2].
BoundReport g_upper(int d, int k, long long n, double lambda);

/// True when N (lambda/2)^d >= (1 + lambda/2)^d, which forces the
/// circumradius of any admissible p-configuration above 1 and hence an
/// empty (or single-point) intersection: g_k = 0.
bool packing_forces_empty(int d, long long n, double lambda);

struct IntersectionThresholds {
    double main = 0.0;     // (1 + sqrt 2)^d, lambda-free
    double part_a = 0.0;   // (1 + 2/lambda)^d
    double part_b = 0.0;   // (1 + sqrt(2d/(d+1)))^d, needs lambda <= sqrt 2
    bool part_b_applicable = false;
    double min_applicable = 0.0; // smallest N guaranteed by any applicable part
};

IntersectionThresholds intersection_thresholds(int d, double lambda);

struct UnionThresholds {
    double part_a = 0.0;          // (1 + lambda/2)^d (d+2)/2, lambda in [sqrt2, 2)
    bool part_a_applicable = false;
    double part_b = 0.0;          // (1 + 2/lambda)^d sigma_d, lambda in (0, sqrt2)
    double part_b_err = 0.0;      // propagated sigma stderr
    bool part_b_applicable = false;
    double part_c_lambda_cap = 0.0; // 1/d^3
    double part_c_n = 0.0;          // (2d^2 + 1)^d
    bool part_c_applicable = false;
    double main = 0.0;              // (1 + 2 d^3)^d
    bool trivial_regime = false;    // lambda >= 2: the union inequality is automatic
};

/// sigma_value/sigma_stderr: the simplex coverage density (closed form for
/// d <= 2, Monte Carlo estimate otherwise; stderr 0 for closed forms).
UnionThresholds union_thresholds(int d, double lambda, double sigma_value, double sigma_stderr);

/// (1 + lambda/2)^d kappa_d — the isodiametric bound on the volume of a
/// union of unit balls whose center set has diameter <= lambda.
double isodiametric_union_upper(int d, double lambda);

struct IntersectionProofReplay {
    double f = 0.0;
    double g = 0.0;
    double margin = 0.0;  // f - g
    bool asserted = false; // true when N^{1/d} - 1 >= sqrt(2d/(d+1)), so margin >= 0 is claimed
};

/// Replays the comparison step of the intersection proof.
IntersectionProofReplay replay_intersection_proof(int d, int k, long long n, double lambda);

struct UnionCaseCReplay {
    double case1_lhs = 0.0;    // 1 + 2 d lambda e^{-d^5 lambda^2}
    double case1_rhs = 0.0;    // (1 + lambda/2)^d
    double case1_margin = 0.0;
    double case2_value = 0.0;  // 2 kappa_d (1 - (1-1/d)^{(d-1)/2} / sqrt(pi))
    double case2_margin = 0.0; // case2_value - 1.1 kappa_d
    bool applicable = false;   // lambda in (0, 1/d^3]
};

/// Replays the two case inequalities of the small-lambda union argument.
UnionCaseCReplay replay_union_case_c(int d, double lambda);

} // namespace kp

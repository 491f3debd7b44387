#pragma once

// End-to-end verification campaigns: uniform-contraction pairs fed through
// the exact planar oracle or Monte Carlo, strong-contraction campaigns over
// unconditional bodies, a simulated-annealing counterexample search, and the
// two frozen figure fixtures.

#include <cstdint>
#include <string>
#include <vector>

#include "kp/geometry.hpp"
#include "kp/planar.hpp"
#include "kp/uncond.hpp"

namespace kp {

enum class Method { PlanarExact, Mc, Slicing };
enum class Verdict { Holds, Violated, Inconclusive };

std::string to_string(Method m);
std::string to_string(Verdict v);
Method method_from_string(const std::string& s);
Verdict verdict_from_string(const std::string& s);

/// One inequality check. `margin` is the slack of the claimed inequality
/// (>= 0 means it holds): rhs - lhs for intersections, lhs - rhs for unions.
/// Verdicts: exact methods flag `Violated` below -1e-9; sampling methods
/// only beyond five combined standard errors, with the in-between band
/// reported `Inconclusive`.
struct VerificationRecord {
    std::string theorem;
    int d = 0;
    int k = 0;
    int n = 0;
    double lambda = 0.0;
    long trial = -1;
    double lhs = 0.0;
    double lhs_err = 0.0;
    double rhs = 0.0;
    double rhs_err = 0.0;
    double margin = 0.0;
    Method method = Method::PlanarExact;
    Verdict verdict = Verdict::Holds;
    std::uint64_t seed = 0;
};

inline constexpr double kExactMarginTol = 1e-9;
inline constexpr double kViolationZ = 5.0;

/// V_k of the two ball intersections (unit balls) for a contraction pair.
/// d = 2 with PlanarExact gives exact values for k in {1,2}; Mc estimates
/// V_d by hit-or-miss or V_1 by mean width (k = 1), budget = sample count.
VerificationRecord verify_intersection_pair(const Configuration& p, const Configuration& q, int k,
                                            Method method, std::uint64_t budget, std::uint64_t seed);

/// Volume (d = 2: exact area; otherwise hit-or-miss) of the two unions.
VerificationRecord verify_union_pair(const Configuration& p, const Configuration& q, Method method,
                                     std::uint64_t budget, std::uint64_t seed);

struct CampaignSpec {
    std::string theorem; // uc-intersection-main | uc-intersection-packing | uc-intersection-jung |
                         // uc-union-main | uc-union-bl | uc-union-rogers | strong-uncond | problem3
                         // (aliases T4, T7a, T7b, T5, T8a, T8b, T6, P3 accepted)
    int d = 2;
    int k = 2;
    int n = 0;
    std::vector<double> lambdas;
    int trials = 100;
    std::uint64_t seed = 0;
    std::uint64_t mc_budget = 200000;
    int threads = 1;
    bool exploratory = false;  // set automatically when outside the hypotheses
    std::string method = "auto"; // auto | exact | mc (strong campaigns always slice)
};

struct CampaignResult {
    std::vector<VerificationRecord> records;
    int holds = 0;
    int violated = 0;
    int inconclusive = 0;
    bool within_hypotheses = true;
    std::vector<std::pair<Configuration, Configuration>> violation_fixtures;
};

/// Canonical name for a theorem alias; throws on unknown ids.
std::string canonical_theorem(const std::string& id);

/// Whether (d, N, lambda) sits inside the quoted hypotheses of the theorem.
bool within_hypotheses(const std::string& theorem, int d, int n, double lambda);

CampaignResult campaign(const CampaignSpec& spec);

struct AnnealSchedule {
    double t0 = 0.05;
    double t1 = 1e-4;
    double step0 = 0.25;
    double step1 = 0.01;
};

struct AnnealTracePoint {
    long iter = 0;
    double current = 0.0;
    double best = 0.0;
};

struct SearchState {
    Configuration best_p;
    Configuration best_q;
    double best_objective = 0.0; // V_k(cap B[p]) - V_k(cap B[q]); positive would be a counterexample
    long iterations = 0;
    long accepted = 0;
    long repair_failures = 0;
    std::vector<AnnealTracePoint> trace;
    std::uint64_t seed = 0;
};

/// Simulated annealing over uniform-contraction pairs, maximizing the
/// (conjecturally nonpositive) objective. Every accepted state satisfies
/// max pairwise(q) <= lambda <= min pairwise(p) exactly.
SearchState anneal_search(int d, int k, int n, double lambda, long iterations,
                          const AnnealSchedule& schedule, std::uint64_t seed);

struct StrongCampaignSummary {
    int trials = 0;
    int holds = 0;
    int violated = 0;
    int inconclusive = 0;
    double worst_union_margin = 0.0;        // most negative union slack seen
    double worst_intersection_margin = 0.0; // most negative intersection slack seen
};

/// Random placed unconditional bodies under random strong contractions
/// (reflection composites and coordinate-wise gap shrinks, alternating);
/// verifies that the union volume does not increase and the intersection
/// volume does not decrease. d = 1 is exact; d >= 2 uses slicing with the
/// stated resolution.
StrongCampaignSummary strong_contraction_campaign(int d, int n_bodies, int trials,
                                                  std::uint64_t seed, int resolution = 0);

struct FigureReport {
    // Triangle-translates fixture: two families that are strong contractions
    // of each other, one intersecting in a small triangle, the other in a point.
    bool fig1_mutual_strong = false;
    double fig1_intersection_area_1 = 0.0;
    double fig1_intersection_area_2 = 0.0;
    double fig1_union_area_1 = 0.0, fig1_union_area_1_err = 0.0;
    double fig1_union_area_2 = 0.0, fig1_union_area_2_err = 0.0;
    double fig1_union_perimeter_1 = 0.0;
    double fig1_union_perimeter_2 = 0.0;
    bool fig1_pass = false;

    // Unconditional-family fixture: a (strong) contraction whose union
    // perimeter strictly grows, showing volume cannot be replaced by
    // surface area.
    bool fig2_contraction = false;
    double fig2_perimeter_1 = 0.0;
    double fig2_perimeter_2 = 0.0;
    double fig2_margin = 0.0;
    bool fig2_pass = false;
};

/// Loads the frozen coordinates from the fixtures JSON file and replays the
/// two counterexample figures. Throws when the file is missing.
FigureReport figure_fixtures(const std::string& fixtures_path);

} // namespace kp

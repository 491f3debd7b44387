// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Run a single criterion with --criterion N.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kp/ball_bodies.hpp"
#include "kp/bounds.hpp"
#include "kp/experiments.hpp"
#include "kp/io.hpp"
#include "kp/measures.hpp"
#include "kp/planar.hpp"

using namespace kp;

#ifndef KP_FIXTURES_JSON
#define KP_FIXTURES_JSON "fixtures/figures.json"
#endif
#ifndef KP_CLI_PATH
#define KP_CLI_PATH ""
#endif

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kPi = 3.14159265358979323846;

struct Ctx {
    std::ostream& out;
    bool ok = true;

    explicit Ctx(std::ostream& o) : out(o) {}

    void require(bool cond, const std::string& msg) {
        if (!cond) {
            ok = false;
            out << "[" << msg << "] ";
        }
    }
};

// 1. Planar campaign for the lambda-free intersection theorem: d=2, N=6,
//    k in {1,2}, lambda grid 0.25..2.0, 1000 trials per cell, exact planar
//    measures, zero violations at margin tolerance -1e-9.
bool criterion1(std::ostream& out) {
    Ctx c(out);
    const std::uint64_t master = 420001;
    int cells = 0;
    long violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (int li = 0; li < 8; ++li) {
        const double lambda = 0.25 * (li + 1);
        for (int trial = 0; trial < 1000; ++trial) {
            const std::uint64_t seed = derive_seed(master, li * 1000 + trial);
            const auto pair = sample_uniform_contraction_pair(2, 6, lambda, 0.0, seed);
            const auto mp = planar::disk_intersection_measure(pair.p, 1.0);
            const auto mq = planar::disk_intersection_measure(pair.q, 1.0);
            for (int k : {1, 2}) {
                const double margin = mq.intrinsic(k) - mp.intrinsic(k);
                worst = std::min(worst, margin);
                if (margin < -1e-9) ++violations;
            }
        }
        ++cells;
    }
    c.require(violations == 0, "violations=" + std::to_string(violations));
    out << "8 lambda cells x 1000 trials x k in {1,2}, worst margin " << fmt17(worst);
    return c.ok;
}

// 2. Proof replay for intersections: f_lower - g_upper >= -1e-12 on the
//    grid d in [2,10], k in {1,d}, lambda in (0, sqrt2] (50 steps),
//    N = ceil of the circumradius-based threshold.
bool criterion2(std::ostream& out) {
    Ctx c(out);
    double worst = std::numeric_limits<double>::infinity();
    for (int d = 2; d <= 10; ++d) {
        const long long n =
            static_cast<long long>(std::ceil(intersection_thresholds(d, 1.0).part_b - 1e-9));
        for (int i = 1; i <= 50; ++i) {
            const double lambda = kSqrt2 * i / 50.0;
            for (int k : {1, d}) {
                const auto rep = replay_intersection_proof(d, k, n, lambda);
                c.require(rep.asserted, "grid point not asserted");
                worst = std::min(worst, rep.margin);
            }
        }
    }
    c.require(worst >= -1e-12, "worst margin " + fmt17(worst));
    out << "g <= f on 900 grid points, worst margin " << fmt17(worst);
    return c.ok;
}

// 3. Bound soundness in the plane: exact V_k of 500 admissible q-sets above
//    f_lower and of 500 admissible p-sets below g_upper, tolerance 1e-9.
bool criterion3(std::ostream& out) {
    Ctx c(out);
    Rng rng(420003);
    double worst_q = std::numeric_limits<double>::infinity();
    double worst_p = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 500; ++i) {
        const double lambda = rng.uniform(0.05, kSqrt2);
        Configuration q;
        q.dim = 2;
        const int nq = 2 + static_cast<int>(rng.next_u64() % 7);
        for (int j = 0; j < nq; ++j) q.points.push_back(rng.in_ball(2, lambda / 2.0));
        const auto mq = planar::disk_intersection_measure(q, 1.0);
        for (int k : {1, 2}) worst_q = std::min(worst_q, mq.intrinsic(k) - f_lower(2, k, lambda).value);

        const int np = 2 + static_cast<int>(rng.next_u64() % 7);
        const auto pair =
            sample_uniform_contraction_pair(2, np, lambda, 0.0, derive_seed(420003, i));
        const auto mp = planar::disk_intersection_measure(pair.p, 1.0);
        for (int k : {1, 2}) worst_p = std::min(worst_p, g_upper(2, k, np, lambda).value - mp.intrinsic(k));
    }
    c.require(worst_q >= -1e-9, "f_lower breached by " + fmt17(-worst_q));
    c.require(worst_p >= -1e-9, "g_upper breached by " + fmt17(-worst_p));
    out << "500 q-sets (slack " << fmt17(worst_q) << "), 500 p-sets (slack " << fmt17(worst_p) << ")";
    return c.ok;
}

// 4. Additive inequality for spindle convex sets in the plane: for 500
//    random (X, rho) with cr(X) <= rho and k in {1,2}:
//    V_k(conv)^{1/k} + V_k(B[X,rho])^{1/k} <= rho V_k(B)^{1/k} + 1e-9.
bool criterion4(std::ostream& out) {
    Ctx c(out);
    Rng rng(420004);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 500; ++i) {
        const double rho = rng.uniform(0.5, 2.0);
        Configuration x;
        x.dim = 2;
        const int n = 1 + static_cast<int>(rng.next_u64() % 6);
        for (int j = 0; j < n; ++j) x.points.push_back(rng.in_ball(2, 0.9 * rho));
        const auto hull = planar::spindle_hull_measure(x, rho);
        const auto body = planar::disk_intersection_measure(x, rho);
        for (int k : {1, 2}) {
            const double lhs = std::pow(hull.intrinsic(k), 1.0 / k) +
                               std::pow(body.intrinsic(k), 1.0 / k);
            const double rhs = rho * std::pow(ball_intrinsic(2, k), 1.0 / k);
            worst = std::min(worst, rhs - lhs);
        }
    }
    c.require(worst >= -1e-9, "inequality breached by " + fmt17(-worst));
    out << "500 instances, k in {1,2}, worst slack " << fmt17(worst);
    return c.ok;
}

// 5. Support identities: sup over 1e4 random directions of
//    |h_Y(u) + h_{B[Y,rho]}(-u) - rho| <= 1e-8 on 100 random instances,
//    plus the constant-width corollary.
bool criterion5(std::ostream& out) {
    Ctx c(out);
    Rng rng(420005);
    double worst = 0.0, worst_width = 0.0;
    for (int inst = 0; inst < 100; ++inst) {
        const double rho = rng.uniform(0.6, 1.8);
        Configuration x;
        x.dim = 2;
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);
        for (int j = 0; j < n; ++j) x.points.push_back(rng.in_ball(2, 0.7 * rho));
        const auto hull = planar::spindle_hull_boundary(x, rho);
        std::vector<planar::P2> cs;
        for (const auto& p : x.points) cs.push_back({p[0], p[1]});
        const auto inter = planar::intersect_disks(cs, rho);
        for (int s = 0; s < 10000; ++s) {
            const Point u = rng.unit_vector(2);
            const double hy = planar::support_of(hull, {u[0], u[1]});
            const double hb = planar::support_of(inter, {-u[0], -u[1]});
            worst = std::max(worst, std::fabs(hy + hb - rho));
            const double hy2 = planar::support_of(hull, {-u[0], -u[1]});
            const double hb2 = planar::support_of(inter, {u[0], u[1]});
            worst_width = std::max(worst_width, std::fabs(hy + hy2 + hb + hb2 - 2.0 * rho));
        }
    }
    c.require(worst <= 1e-8, "difference identity off by " + fmt17(worst));
    c.require(worst_width <= 1e-8, "constant width off by " + fmt17(worst_width));
    out << "100 instances x 1e4 directions, sup dev " << fmt17(worst) << " (width "
        << fmt17(worst_width) << ")";
    return c.ok;
}

// 6. Simplex coverage density: d=2 estimate within 4 stderr of pi/(2 sqrt 3)
//    at n=1e6; d=1 within 4 stderr of 1.
bool criterion6(std::ostream& out) {
    Ctx c(out);
    const auto s2 = sigma_simplex_density(2, 1000000, 420006);
    const double target2 = kPi / (2.0 * std::sqrt(3.0));
    c.require(std::fabs(s2.value - target2) <= 4.0 * s2.stderr_,
              "sigma_2 z=" + fmt17((s2.value - target2) / s2.stderr_));
    const auto s1 = sigma_simplex_density(1, 100000, 420006);
    c.require(std::fabs(s1.value - 1.0) <= 4.0 * s1.stderr_ + 1e-12, "sigma_1 off");
    out << "sigma_2 = " << fmt17(s2.value) << " (target " << fmt17(target2) << ", stderr "
        << fmt17(s2.stderr_) << "), sigma_1 = " << fmt17(s1.value);
    return c.ok;
}

// 7. Union theorems: (a) planar campaigns at lambda in {1.45, 1.6, 1.8},
//    N = ceil((1+lambda/2)^2 * 2), 500 trials, exact areas, zero violations;
//    (c) the two case inequalities of the small-lambda argument on dense
//    grids for d in [2,10].
bool criterion7(std::ostream& out) {
    Ctx c(out);
    long violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (const double lambda : {1.45, 1.6, 1.8}) {
        const int n = static_cast<int>(
            std::ceil(union_thresholds(2, lambda, sigma_closed_form(2), 0.0).part_a - 1e-9));
        for (int trial = 0; trial < 500; ++trial) {
            const std::uint64_t seed = derive_seed(420007, static_cast<std::uint64_t>(lambda * 1000) + trial);
            const auto pair = sample_uniform_contraction_pair(2, n, lambda, 0.0, seed);
            const double up = planar::disk_union_measure(pair.p, 1.0).area;
            const double uq = planar::disk_union_measure(pair.q, 1.0).area;
            const double margin = up - uq;
            worst = std::min(worst, margin);
            if (margin < -1e-9) ++violations;
        }
    }
    c.require(violations == 0, "union violations=" + std::to_string(violations));

    double worst_c1 = std::numeric_limits<double>::infinity();
    double worst_c2 = std::numeric_limits<double>::infinity();
    for (int d = 2; d <= 10; ++d) {
        const double cap = 1.0 / (static_cast<double>(d) * d * d);
        for (int i = 1; i <= 64; ++i) {
            const auto rep = replay_union_case_c(d, cap * i / 64.0);
            worst_c1 = std::min(worst_c1, rep.case1_margin);
            worst_c2 = std::min(worst_c2, rep.case2_margin);
        }
    }
    c.require(worst_c1 >= 0.0, "case-1 margin " + fmt17(worst_c1));
    c.require(worst_c2 >= 0.0, "case-2 margin " + fmt17(worst_c2));
    out << "1500 exact union trials (worst margin " << fmt17(worst) << "), case replays worst "
        << fmt17(worst_c1) << " / " << fmt17(worst_c2);
    return c.ok;
}

// 8. Strong contractions of unconditional bodies: 1e5 exact 1D trials and
//    slicing campaigns in d=2 (500 trials) and d=3 (100 trials), zero
//    violations beyond the combined error bounds.
bool criterion8(std::ostream& out) {
    Ctx c(out);
    const auto one_d = strong_contraction_campaign(1, 4, 100000, 420008);
    c.require(one_d.violated == 0 && one_d.inconclusive == 0,
              "1D: violated=" + std::to_string(one_d.violated) +
                  " inconclusive=" + std::to_string(one_d.inconclusive));
    c.require(one_d.worst_union_margin >= -1e-12 && one_d.worst_intersection_margin >= -1e-12,
              "1D margins");
    const auto two_d = strong_contraction_campaign(2, 3, 500, 420009);
    c.require(two_d.violated == 0 && two_d.inconclusive == 0,
              "2D: violated=" + std::to_string(two_d.violated) +
                  " inconclusive=" + std::to_string(two_d.inconclusive));
    const auto three_d = strong_contraction_campaign(3, 3, 100, 420010, 32);
    c.require(three_d.violated == 0 && three_d.inconclusive == 0,
              "3D: violated=" + std::to_string(three_d.violated) +
                  " inconclusive=" + std::to_string(three_d.inconclusive));
    out << "1e5 exact 1D trials, 500 d=2 and 100 d=3 slicing trials; worst 1D margins "
        << fmt17(one_d.worst_union_margin) << " / " << fmt17(one_d.worst_intersection_margin);
    return c.ok;
}

// 9. Figure fixtures at the frozen coordinates.
bool criterion9(std::ostream& out) {
    Ctx c(out);
    const auto r = figure_fixtures(KP_FIXTURES_JSON);
    c.require(r.fig1_mutual_strong, "fig1 mutual strong contraction");
    c.require(r.fig1_intersection_area_2 < 1e-9,
              "fig1 second intersection area " + fmt17(r.fig1_intersection_area_2));
    c.require(r.fig1_pass, "fig1 union comparison");
    c.require(r.fig2_contraction, "fig2 contraction");
    c.require(r.fig2_margin > 0.01, "fig2 perimeter margin " + fmt17(r.fig2_margin));
    out << "fig1 point intersection (area " << fmt17(r.fig1_intersection_area_2)
        << "), fig2 perimeter margin " << fmt17(r.fig2_margin);
    return c.ok;
}

// 10. Geometry kernel oracles: circumball vs exhaustive search (1e-10, 200
//     instances, d<=3); exact planar measures vs Monte Carlo within 4 stderr
//     (200 instances); the covering containment with zero failures in 1e5
//     samples across 50 instances; the hull fixed-point identity at 1e-9.
bool criterion10(std::ostream& out) {
    Ctx c(out);
    Rng rng(420011);
    double worst_cb = 0.0;
    for (int i = 0; i < 200; ++i) {
        const int d = 1 + static_cast<int>(rng.next_u64() % 3);
        const int n = 1 + static_cast<int>(rng.next_u64() % 8);
        std::vector<Point> pts;
        for (int j = 0; j < n; ++j) {
            Point p(d);
            for (auto& v : p) v = rng.uniform(-2, 2);
            pts.push_back(p);
        }
        worst_cb = std::max(worst_cb,
                            std::fabs(circumball(pts).radius - circumball_bruteforce(pts).radius));
    }
    c.require(worst_cb <= 1e-10, "circumball gap " + fmt17(worst_cb));

    double worst_z = 0.0;
    for (int i = 0; i < 200; ++i) {
        Configuration x;
        x.dim = 2;
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);
        const double spread = rng.uniform(0.3, 1.2);
        for (int j = 0; j < n; ++j) x.points.push_back(rng.in_ball(2, spread));
        const double rho = rng.uniform(0.7, 1.3);
        Box box{{x.points[0][0], x.points[0][1]}, {x.points[0][0], x.points[0][1]}};
        for (const auto& p : x.points) box.absorb(p, rho);
        const bool union_mode = (i % 2) == 0;
        const auto member = [&](const Point& y) {
            bool all = true, any = false;
            for (const auto& p : x.points) {
                const bool in = dist2(p, y) <= rho * rho;
                all = all && in;
                any = any || in;
            }
            return union_mode ? any : all;
        };
        const auto mc = mc_volume(member, box, 200000, derive_seed(420012, i));
        const double exact = union_mode ? planar::disk_union_measure(x, rho).area
                                        : planar::disk_intersection_measure(x, rho).area;
        if (mc.stderr_ > 0.0) worst_z = std::max(worst_z, std::fabs(mc.value - exact) / mc.stderr_);
    }
    c.require(worst_z <= 4.0, "planar-vs-MC z " + fmt17(worst_z));

    std::uint64_t failures = 0;
    for (int i = 0; i < 50; ++i) {
        Configuration q;
        q.dim = 2;
        const int n = 1 + static_cast<int>(rng.next_u64() % 5);
        for (int j = 0; j < n; ++j) q.points.push_back(rng.in_ball(2, 0.6));
        const auto rep = check_ball_covering_containment(q, rng.uniform(0.1, 1.0), 2000,
                                                         derive_seed(420013, i));
        failures += rep.failures;
    }
    c.require(failures == 0, "covering failures=" + std::to_string(failures));

    std::uint64_t disagreements = 0;
    for (int i = 0; i < 10; ++i) {
        Configuration x;
        x.dim = 2;
        const int n = 1 + static_cast<int>(rng.next_u64() % 5);
        for (int j = 0; j < n; ++j) x.points.push_back(rng.in_ball(2, 0.5));
        const auto rep = check_spindle_fixed_point(x, 1.0, 10000, derive_seed(420014, i), 1e-9);
        disagreements += rep.disagreements;
    }
    c.require(disagreements == 0, "fixed-point disagreements=" + std::to_string(disagreements));
    out << "circumball gap " << fmt17(worst_cb) << ", planar-vs-MC worst z " << fmt17(worst_z)
        << ", 1e5 covering samples clean, hull identity clean";
    return c.ok;
}

// 11. Determinism: the same stochastic command produces byte-identical CSV,
//     independent of the thread count, and the search trace reproduces.
bool criterion11(std::ostream& out) {
    Ctx c(out);
    const std::string cli = KP_CLI_PATH;
    if (cli.empty()) {
        out << "CLI path not configured";
        return false;
    }
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "kp_acceptance";
    fs::create_directories(dir);
    const auto run = [&](const std::string& args) {
        const std::string cmd = cli + " " + args + " 2>/dev/null";
        return std::system(cmd.c_str());
    };
    const std::string a = (dir / "a.csv").string();
    const std::string b = (dir / "b.csv").string();
    const std::string base =
        "verify --theorem T4 --d 2 --k 2 --N 6 --lambda 1.0 --trials 40 --seed 7 ";
    c.require(run(base + "--threads 1 --out " + a) == 0, "run A failed");
    c.require(run(base + "--threads 4 --out " + b) == 0, "run B failed");
    c.require(read_file(a) == read_file(b), "CSV differs across thread counts");

    const std::string s1 = (dir / "s1.json").string();
    const std::string s2 = (dir / "s2.json").string();
    const std::string search = "search --d 2 --k 2 --N 5 --lambda 1.0 --iters 150 --seed 11 --out ";
    c.require(run(search + s1) == 0, "search run 1 failed");
    c.require(run(search + s2) == 0, "search run 2 failed");
    c.require(read_file(s1) == read_file(s2), "search trace differs between runs");
    out << "verify CSV identical across --threads 1/4; search trace byte-stable";
    return c.ok;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc - 0; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }

    struct Entry {
        int id;
        const char* label;
        std::function<bool(std::ostream&)> fn;
    };
    const std::vector<Entry> criteria = {
        {1, "lambda-free intersection theorem, exact planar campaign", criterion1},
        {2, "intersection proof replay grid", criterion2},
        {3, "bound soundness against exact planar measures", criterion3},
        {4, "additive spindle inequality", criterion4},
        {5, "support difference identity and constant width", criterion5},
        {6, "simplex coverage density", criterion6},
        {7, "union theorem campaigns and case replays", criterion7},
        {8, "strong contractions of unconditional bodies", criterion8},
        {9, "figure fixtures", criterion9},
        {10, "geometry kernel oracles", criterion10},
        {11, "byte-level determinism of stochastic commands", criterion11},
    };

    int failures = 0;
    for (const auto& e : criteria) {
        if (only != 0 && e.id != only) continue;
        std::ostringstream detail;
        bool ok = false;
        try {
            ok = e.fn(detail);
        } catch (const std::exception& ex) {
            detail << "exception: " << ex.what();
        }
        std::cout << (ok ? "[ PASS ] " : "[ FAIL ] ") << "criterion " << e.id << ": " << e.label
                  << " :: " << detail.str() << "\n";
        if (!ok) ++failures;
    }
    return failures;
}

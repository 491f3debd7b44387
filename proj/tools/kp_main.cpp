// kp — command line front end for the contraction verification toolkit.
//
// Subcommands:
//   bounds        tabulate the closed-form bounds and thresholds as CSV
//   verify        run a verification campaign for one theorem id
//   search        simulated-annealing counterexample search
//   sigma         Monte Carlo estimate of the simplex coverage density
//   demo-figures  replay the two frozen counterexample figures
//
// Every stochastic command requires --seed; repeated runs with the same
// parameters produce byte-identical CSV, independent of --threads.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kp/bounds.hpp"
#include "kp/experiments.hpp"
#include "kp/io.hpp"
#include "kp/measures.hpp"

using namespace kp;
using nlohmann::json;

namespace {

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

void write_manifest_for(const std::string& command,
                        const std::vector<std::pair<std::string, std::string>>& params,
                        std::uint64_t seed, const std::string& out_path) {
    if (out_path.empty()) return;
    RunManifest m;
    m.command = command;
    m.params = params;
    m.seed = seed;
    m.created_utc = utc_now();
    m.outputs = {out_path};
    write_file(out_path + ".manifest.json", manifest_to_json(m));
}

std::vector<double> parse_lambda_grid(const std::string& grid, double single) {
    if (grid.empty()) return {single};
    // "lo:hi:steps" inclusive grid.
    double lo = 0, hi = 0;
    int steps = 0;
    if (std::sscanf(grid.c_str(), "%lf:%lf:%d", &lo, &hi, &steps) != 3 || steps < 1)
        throw CLI::ValidationError("--lambda-grid", "expected lo:hi:steps");
    std::vector<double> out;
    for (int i = 0; i < steps; ++i)
        out.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kp — numerical verification toolkit for contraction inequalities of ball "
                 "unions/intersections and unconditional bodies"};
    app.require_subcommand(1);

    // ---- bounds ----
    auto* cmd_bounds = app.add_subcommand("bounds", "tabulate bounds and thresholds as CSV");
    int b_d = 2, b_k = 0;
    long long b_n = -1;
    double b_lambda = 1.0;
    std::string b_grid, b_out;
    std::uint64_t b_sigma_n = 200000;
    std::uint64_t b_seed = 1;
    cmd_bounds->add_option("--d", b_d, "dimension")->required();
    cmd_bounds->add_option("--k", b_k, "intrinsic volume order (default: d)");
    cmd_bounds->add_option("--N", b_n, "number of balls (enables N-dependent bounds)");
    cmd_bounds->add_option("--lambda", b_lambda, "separating value");
    cmd_bounds->add_option("--lambda-grid", b_grid, "lo:hi:steps grid of separating values");
    cmd_bounds->add_option("--sigma-n", b_sigma_n, "samples for the sigma_d estimate (d >= 3)");
    cmd_bounds->add_option("--seed", b_seed, "seed for the sigma_d estimate");
    cmd_bounds->add_option("--out", b_out, "output CSV path (default: stdout)");

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "run a verification campaign");
    std::string v_theorem, v_grid, v_out, v_method = "auto";
    int v_d = 2, v_k = 2, v_n = 0, v_trials = 100, v_threads = 1;
    double v_lambda = 1.0;
    std::uint64_t v_seed = 0, v_budget = 200000;
    bool v_exploratory = false;
    cmd_verify->add_option("--theorem", v_theorem,
                           "theorem id (uc-intersection-main, uc-intersection-packing, "
                           "uc-intersection-jung, uc-union-main, uc-union-bl, uc-union-rogers, "
                           "strong-uncond, problem3; aliases T4 T7a T7b T5 T8a T8b T6 P3)")
        ->required();
    cmd_verify->add_option("--d", v_d, "dimension")->required();
    cmd_verify->add_option("--k", v_k, "intrinsic volume order (intersection campaigns)");
    cmd_verify->add_option("--N", v_n, "number of balls / bodies");
    cmd_verify->add_option("--lambda", v_lambda, "separating value");
    cmd_verify->add_option("--lambda-grid", v_grid, "lo:hi:steps grid");
    cmd_verify->add_option("--trials", v_trials, "trials per lambda cell");
    cmd_verify->add_option("--seed", v_seed, "master seed")->required();
    cmd_verify->add_option("--threads", v_threads, "worker cap (does not change results)");
    cmd_verify->add_option("--mc-budget", v_budget, "Monte Carlo samples per measure");
    cmd_verify->add_option("--method", v_method, "exact|mc|slicing|auto");
    cmd_verify->add_flag("--exploratory", v_exploratory, "flag records as exploratory");
    cmd_verify->add_option("--out", v_out, "output CSV path (default: stdout)");

    // ---- search ----
    auto* cmd_search = app.add_subcommand("search", "simulated-annealing counterexample search");
    int s_d = 2, s_k = 2, s_n = 6;
    long s_iters = 10000;
    double s_lambda = 1.0, s_t0 = 0.05, s_t1 = 1e-4;
    std::uint64_t s_seed = 0;
    std::string s_out;
    cmd_search->add_option("--d", s_d, "dimension")->required();
    cmd_search->add_option("--k", s_k, "intrinsic volume order");
    cmd_search->add_option("--N", s_n, "number of balls")->required();
    cmd_search->add_option("--lambda", s_lambda, "separating value")->required();
    cmd_search->add_option("--iters", s_iters, "iterations");
    cmd_search->add_option("--seed", s_seed, "master seed")->required();
    cmd_search->add_option("--t0", s_t0, "initial temperature");
    cmd_search->add_option("--t1", s_t1, "final temperature");
    cmd_search->add_option("--out", s_out, "output JSON path (default: stdout)");

    // ---- sigma ----
    auto* cmd_sigma = app.add_subcommand("sigma", "simplex coverage density estimate");
    int g_d = 2;
    std::uint64_t g_n = 1000000, g_seed = 1;
    cmd_sigma->add_option("--d", g_d, "dimension")->required();
    cmd_sigma->add_option("--n", g_n, "samples");
    cmd_sigma->add_option("--seed", g_seed, "seed");

    // ---- demo-figures ----
    auto* cmd_fig = app.add_subcommand("demo-figures", "replay the frozen figure fixtures");
    std::string f_path = "fixtures/figures.json";
    cmd_fig->add_option("--fixtures", f_path, "fixtures JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_bounds) {
            if (b_k <= 0) b_k = b_d;
            double sigma = 0.0, sigma_err = 0.0;
            if (b_d <= 2) {
                sigma = sigma_closed_form(b_d);
            } else {
                const auto e = sigma_simplex_density(b_d, b_sigma_n, b_seed);
                sigma = e.value;
                sigma_err = e.stderr_;
            }
            std::ostringstream csv;
            csv << "name,d,k,N,lambda,value,applicable\n";
            auto row = [&](const std::string& name, int k, long long n, double lambda, double value,
                           bool applicable) {
                csv << name << ',' << b_d << ',' << k << ',' << n << ',' << fmt17(lambda) << ','
                    << fmt17(value) << ',' << (applicable ? "true" : "false") << "\n";
            };
            row("kappa_d", b_d, -1, 0.0, kappa(b_d), true);
            row("ball_intrinsic", b_k, -1, 0.0, ball_intrinsic(b_d, b_k), true);
            for (double lambda : parse_lambda_grid(b_grid, b_lambda)) {
                const auto f = f_lower(b_d, b_k, lambda);
                row(f.name, f.k, -1, lambda, f.value, f.applicable);
                if (b_n > 0) {
                    const auto g = g_upper(b_d, b_k, b_n, lambda);
                    row(g.name, g.k, b_n, lambda, g.value, g.applicable);
                    row("packing_forces_empty", b_k, b_n, lambda,
                        packing_forces_empty(b_d, b_n, lambda) ? 1.0 : 0.0, true);
                }
                const auto it = intersection_thresholds(b_d, lambda);
                row("intersection_threshold_main", b_k, -1, lambda, it.main, true);
                row("intersection_threshold_part_a", b_k, -1, lambda, it.part_a, true);
                row("intersection_threshold_part_b", b_k, -1, lambda, it.part_b, it.part_b_applicable);
                const auto ut = union_thresholds(b_d, lambda, sigma, sigma_err);
                row("union_threshold_main", b_d, -1, lambda, ut.main, !ut.trivial_regime);
                row("union_threshold_part_a", b_d, -1, lambda, ut.part_a, ut.part_a_applicable);
                row("union_threshold_part_b", b_d, -1, lambda, ut.part_b, ut.part_b_applicable);
                row("union_threshold_part_c_N", b_d, -1, lambda, ut.part_c_n, ut.part_c_applicable);
                if (lambda < 2.0)
                    row("isodiametric_union_upper", b_d, -1, lambda,
                        isodiametric_union_upper(b_d, lambda), true);
            }
            emit(b_out, csv.str());
            write_manifest_for("bounds", {{"d", std::to_string(b_d)}, {"k", std::to_string(b_k)}},
                               b_seed, b_out);
            return 0;
        }

        if (*cmd_verify) {
            CampaignSpec spec;
            spec.theorem = v_theorem;
            spec.d = v_d;
            spec.k = v_k;
            spec.n = v_n;
            spec.lambdas = parse_lambda_grid(v_grid, v_lambda);
            spec.trials = v_trials;
            spec.seed = v_seed;
            spec.mc_budget = v_budget;
            spec.threads = v_threads;
            spec.exploratory = v_exploratory;
            spec.method = (v_method == "slicing") ? "auto" : v_method; // strong campaigns slice anyway
            const CampaignResult res = campaign(spec);
            emit(v_out, records_to_csv(res.records));
            write_manifest_for("verify",
                               {{"theorem", v_theorem},
                                {"d", std::to_string(v_d)},
                                {"k", std::to_string(v_k)},
                                {"N", std::to_string(v_n)},
                                {"lambda", v_grid.empty() ? fmt17(v_lambda) : v_grid},
                                {"trials", std::to_string(v_trials)},
                                {"mc_budget", std::to_string(v_budget)},
                                {"method", v_method},
                                {"sampler", "uc-ball-dart-v1"}},
                               v_seed, v_out);
            std::cerr << "holds=" << res.holds << " violated=" << res.violated
                      << " inconclusive=" << res.inconclusive << "\n";
            if (!v_out.empty() && res.violated > 0) {
                int i = 0;
                for (const auto& [p, q] : res.violation_fixtures) {
                    write_file(v_out + ".violation" + std::to_string(i) + ".p.json",
                               configuration_to_json(p));
                    write_file(v_out + ".violation" + std::to_string(i) + ".q.json",
                               configuration_to_json(q));
                    ++i;
                }
            }
            // Nonzero exit only for violations inside the quoted hypotheses.
            return (res.violated > 0 && res.within_hypotheses && !v_exploratory) ? 1 : 0;
        }

        if (*cmd_search) {
            AnnealSchedule sched;
            sched.t0 = s_t0;
            sched.t1 = s_t1;
            const SearchState state = anneal_search(s_d, s_k, s_n, s_lambda, s_iters, sched, s_seed);
            json trace = json::array();
            for (const auto& tp : state.trace)
                trace.push_back({{"iter", tp.iter},
                                 {"objective", fmt17(tp.current)},
                                 {"best", fmt17(tp.best)}});
            json out{{"d", s_d},
                     {"k", s_k},
                     {"N", s_n},
                     {"lambda", fmt17(s_lambda)},
                     {"iterations", state.iterations},
                     {"accepted", state.accepted},
                     {"repair_failures", state.repair_failures},
                     {"best_objective", fmt17(state.best_objective)},
                     {"best_p", json::parse(configuration_to_json(state.best_p))},
                     {"best_q", json::parse(configuration_to_json(state.best_q))},
                     {"seed", state.seed},
                     {"trace", trace}};
            emit(s_out, out.dump(2) + "\n");
            write_manifest_for("search",
                               {{"d", std::to_string(s_d)},
                                {"k", std::to_string(s_k)},
                                {"N", std::to_string(s_n)},
                                {"lambda", fmt17(s_lambda)},
                                {"iters", std::to_string(s_iters)}},
                               s_seed, s_out);
            return 0;
        }

        if (*cmd_sigma) {
            const auto e = sigma_simplex_density(g_d, g_n, g_seed);
            std::cout << "sigma_d estimate d=" << g_d << " n=" << g_n << " seed=" << g_seed << "\n";
            std::cout << "value=" << fmt17(e.value) << " stderr=" << fmt17(e.stderr_) << "\n";
            if (g_d <= 2) {
                const double exact = sigma_closed_form(g_d);
                const double z = e.stderr_ > 0 ? (e.value - exact) / e.stderr_ : 0.0;
                std::cout << "closed_form=" << fmt17(exact) << " z=" << fmt17(z) << "\n";
            }
            return 0;
        }

        if (*cmd_fig) {
            const FigureReport r = figure_fixtures(f_path);
            auto line = [](bool ok, const std::string& what) {
                std::cout << (ok ? "[ PASS ] " : "[ FAIL ] ") << what << "\n";
            };
            line(r.fig1_mutual_strong, "fig1: families are strong contractions of each other");
            line(r.fig1_intersection_area_2 < 1e-9,
                 "fig1: second family intersection is a point (area " +
                     fmt17(r.fig1_intersection_area_2) + ")");
            line(r.fig1_union_perimeter_1 > r.fig1_union_perimeter_2,
                 "fig1: first family union has larger perimeter (" + fmt17(r.fig1_union_perimeter_1) +
                     " vs " + fmt17(r.fig1_union_perimeter_2) + ")");
            line(r.fig1_union_area_1 > r.fig1_union_area_2,
                 "fig1: first family union has larger area (" + fmt17(r.fig1_union_area_1) + " vs " +
                     fmt17(r.fig1_union_area_2) + ")");
            line(r.fig2_contraction, "fig2: second family is a contraction of the first");
            line(r.fig2_margin > 0.01, "fig2: contracted union perimeter grows by " +
                                           fmt17(r.fig2_margin) + " (exact edge clipping)");
            return (r.fig1_pass && r.fig2_pass) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

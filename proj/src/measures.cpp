#include "kp/measures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "kp/geometry.hpp"
#include "kp/rng.hpp"

namespace kp {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

double kappa(int dim) {
    if (dim == 0) return 1.0;
    if (dim < 0) throw std::invalid_argument("kappa: dim must be >= 0");
    return std::exp(0.5 * dim * std::log(kPi) - std::lgamma(0.5 * dim + 1.0));
}

double ball_intrinsic(int dim, int k) {
    if (dim < 1 || k < 1 || k > dim) throw std::invalid_argument("ball_intrinsic: need 1 <= k <= d");
    // C(d,k) via lgamma keeps this stable for the d <= 50 range used here.
    const double log_binom =
        std::lgamma(dim + 1.0) - std::lgamma(k + 1.0) - std::lgamma(dim - k + 1.0);
    return std::exp(log_binom) * kappa(dim) / kappa(dim - k);
}

McEstimate mc_volume(const MemberFn& member, const Box& box, std::uint64_t n, std::uint64_t seed,
                     int threads) {
    if (!box.valid()) throw std::invalid_argument("mc_volume: invalid box");
    if (n == 0) throw std::invalid_argument("mc_volume: sample count must be positive");

    constexpr std::uint64_t kShard = 1u << 14;
    const std::uint64_t shards = (n + kShard - 1) / kShard;
    std::vector<std::uint64_t> hits(shards, 0);

    auto run_shard = [&](std::uint64_t s) {
        const std::uint64_t lo = s * kShard;
        const std::uint64_t count = std::min(kShard, n - lo);
        Rng rng(derive_seed(seed, s));
        std::uint64_t h = 0;
        for (std::uint64_t i = 0; i < count; ++i)
            if (member(box.sample(rng))) ++h;
        hits[s] = h;
    };

    if (threads <= 1 || shards == 1) {
        for (std::uint64_t s = 0; s < shards; ++s) run_shard(s);
    } else {
        const int workers = std::min<std::uint64_t>(threads, shards);
        std::vector<std::thread> pool;
        std::atomic<std::uint64_t> next{0};
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t s = next.fetch_add(1); s < shards; s = next.fetch_add(1))
                    run_shard(s);
            });
        for (auto& t : pool) t.join();
    }

    std::uint64_t total_hits = 0;
    for (std::uint64_t s = 0; s < shards; ++s) total_hits += hits[s]; // fixed merge order
    const double p_hat = static_cast<double>(total_hits) / static_cast<double>(n);
    const double vol = box.volume();
    McEstimate e;
    e.value = p_hat * vol;
    e.stderr_ = vol * std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat) / static_cast<double>(n)));
    e.samples = n;
    e.seed = seed;
    return e;
}

double interval_union_length(const std::vector<std::pair<double, double>>& intervals) {
    std::vector<std::pair<double, double>> iv;
    iv.reserve(intervals.size());
    for (const auto& [lo, hi] : intervals) {
        if (!(lo <= hi)) throw std::invalid_argument("interval_union_length: lo > hi");
        iv.emplace_back(lo, hi);
    }
    std::sort(iv.begin(), iv.end());
    double total = 0.0;
    double cur_lo = 0.0, cur_hi = 0.0;
    bool open = false;
    for (const auto& [lo, hi] : iv) {
        if (!open) {
            cur_lo = lo;
            cur_hi = hi;
            open = true;
        } else if (lo <= cur_hi) {
            cur_hi = std::max(cur_hi, hi);
        } else {
            total += cur_hi - cur_lo;
            cur_lo = lo;
            cur_hi = hi;
        }
    }
    if (open) total += cur_hi - cur_lo;
    return total;
}

// --- regularized incomplete beta ---------------------------------------------

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cont_frac(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("regularized_incomplete_beta: x in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cont_frac(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     beta_cont_frac(b, a, 1.0 - x) / b;
}

double cap_volume_signed(int dim, double t) {
    if (dim < 1) throw std::invalid_argument("cap_volume_signed: dim >= 1 required");
    if (!(t > -1.0 && t < 1.0)) throw std::invalid_argument("cap_volume_signed: t in (-1,1)");
    if (t < 0.0) return kappa(dim) - cap_volume_signed(dim, -t);
    const double x = 1.0 - t * t;
    return 0.5 * kappa(dim) * regularized_incomplete_beta(0.5 * (dim + 1.0), 0.5, x);
}

CapCone cap_and_cone_volumes(int dim, double h) {
    if (dim < 1) throw std::invalid_argument("cap_and_cone_volumes: dim >= 1 required");
    if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("cap_and_cone_volumes: h in (0,1)");
    CapCone out;
    out.cap = cap_volume_signed(dim, h);
    out.cone = (h / dim) * std::pow(1.0 - h * h, 0.5 * (dim - 1)) * kappa(dim - 1);
    if (dim >= 2)
        out.cap_upper =
            std::pow(1.0 - h * h, 0.5 * (dim - 1)) / (std::sqrt(2.0 * kPi * (dim - 1)) * h) * kappa(dim);
    return out;
}

McEstimate sigma_simplex_density(int dim, std::uint64_t n, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("sigma_simplex_density: dim >= 1 required");
    const std::vector<Point> verts = regular_simplex_vertices(dim, 2.0);
    Rng rng(seed);
    std::uint64_t hits = 0;
    std::vector<double> w(dim + 1);
    Point x(dim);
    for (std::uint64_t s = 0; s < n; ++s) {
        // Dirichlet(1,..,1) weights give the uniform distribution on the simplex.
        double total = 0.0;
        for (auto& wi : w) {
            double u = rng.uniform();
            while (u <= 0.0) u = rng.uniform();
            wi = -std::log(u);
            total += wi;
        }
        std::fill(x.begin(), x.end(), 0.0);
        for (int v = 0; v <= dim; ++v)
            for (int c = 0; c < dim; ++c) x[c] += (w[v] / total) * verts[v][c];
        for (int v = 0; v <= dim; ++v)
            if (dist2(x, verts[v]) <= 1.0) {
                ++hits;
                break;
            }
    }
    const double p_hat = static_cast<double>(hits) / static_cast<double>(n);
    McEstimate e;
    e.value = p_hat;
    e.stderr_ = std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat) / static_cast<double>(n)));
    e.samples = n;
    e.seed = seed;
    return e;
}

double sigma_closed_form(int dim) {
    if (dim == 1) return 1.0;
    if (dim == 2) return kPi / (2.0 * std::sqrt(3.0));
    throw std::invalid_argument("sigma_closed_form: only d <= 2 has a closed form here");
}

McEstimate mc_intrinsic_v1(const SupportFn& support, int dim, std::uint64_t n, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("mc_intrinsic_v1: dim >= 1 required");
    if (n == 0) throw std::invalid_argument("mc_intrinsic_v1: sample count must be positive");
    const double c = ball_intrinsic(dim, 1) / 2.0; // width of the unit ball is 2 in every direction
    Rng rng(seed);
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t s = 0; s < n; ++s) {
        const Point u = rng.unit_vector(dim);
        const double width = support(u) + support(scaled(u, -1.0));
        sum += width;
        sum2 += width * width;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, sum2 / static_cast<double>(n) - mean * mean);
    McEstimate e;
    e.value = c * mean;
    e.stderr_ = c * std::sqrt(var / static_cast<double>(n));
    e.samples = n;
    e.seed = seed;
    return e;
}

} // namespace kp

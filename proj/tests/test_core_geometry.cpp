#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kp/geometry.hpp"

using namespace kp;

namespace {

Configuration line_config(std::vector<double> xs) {
    Configuration c;
    c.dim = 1;
    for (double x : xs) c.points.push_back({x});
    return c;
}

Configuration plane_config(std::vector<std::pair<double, double>> pts) {
    Configuration c;
    c.dim = 2;
    for (auto [x, y] : pts) c.points.push_back({x, y});
    return c;
}

} // namespace

TEST_CASE("pairwise distances") {
    const auto s = pairwise_distances(line_config({0, 3}));
    CHECK(s.matrix[0][1] == doctest::Approx(3.0));
    CHECK(s.matrix[1][0] == doctest::Approx(3.0));
    CHECK(s.min_pairwise == doctest::Approx(3.0));
    CHECK(s.max_pairwise == doctest::Approx(3.0));

    const auto single = pairwise_distances(line_config({7}));
    CHECK(single.min_pairwise == 0.0);
    CHECK(single.max_pairwise == 0.0);

    // 3-4-5 triangle sides: distances 5, 8, 5.
    const auto tri = pairwise_distances(plane_config({{0, 0}, {3, 4}, {0, 8}}));
    CHECK(tri.min_pairwise == doctest::Approx(5.0));
    CHECK(tri.max_pairwise == doctest::Approx(8.0));
}

TEST_CASE("contraction predicate") {
    const auto p = line_config({-100, -1, 1, 100});
    const auto q = line_config({-100, -1, 0, 99});
    CHECK(is_contraction(p, p, 0.0));
    CHECK(is_contraction(p, q, 0.0));

    CHECK_FALSE(is_contraction(line_config({0, 1}), line_config({0, 2}), 0.0));
    CHECK_THROWS_AS(is_contraction(p, line_config({0, 1}), 0.0), std::invalid_argument);
}

TEST_CASE("uniform contraction interval") {
    const auto q0 = plane_config({{0, 0}, {0, 0}, {0, 0}});
    const auto p = plane_config({{0, 0}, {1, 0}, {0, 1}});
    const auto iv = uniform_contraction_interval(p, q0);
    REQUIRE(iv.has_value());
    CHECK(iv->first == doctest::Approx(0.0));
    CHECK(iv->second == doctest::Approx(1.0));

    const auto two = line_config({0, 1});
    const auto same = uniform_contraction_interval(two, two);
    REQUIRE(same.has_value());
    CHECK(same->first == doctest::Approx(1.0));
    CHECK(same->second == doctest::Approx(1.0));

    // q of diameter 1.2 against p of min distance 1.0: no admissible value.
    CHECK_FALSE(uniform_contraction_interval(line_config({0, 1}), line_config({0, 1.2})).has_value());

    // Non-empty interval implies contraction.
    Rng rng(404);
    for (int t = 0; t < 50; ++t) {
        const auto pair = sample_uniform_contraction_pair(2, 4, 0.8, 0.0, rng.next_u64());
        const auto got = uniform_contraction_interval(pair.p, pair.q);
        REQUIRE(got.has_value());
        CHECK(got->first <= 0.8);
        CHECK(got->second >= 0.8);
        CHECK(is_contraction(pair.p, pair.q, 0.0));
    }
}

TEST_CASE("strong contraction predicate") {
    const auto p = line_config({-100, -1, 1, 100});
    const auto q = line_config({-100, -1, 0, 99});
    CHECK(is_strong_contraction(p, q, 0.0));
    CHECK(is_contraction(p, q, 0.0));

    // Rotating by 90 degrees preserves distances but swaps coordinate gaps:
    // a contraction that is not strong.
    const auto a = plane_config({{0, 0}, {2, 1}});
    const auto rot = plane_config({{0, 0}, {-1, 2}});
    CHECK(is_contraction(a, rot, 1e-12));
    CHECK_FALSE(is_strong_contraction(a, rot, 1e-12));
}

TEST_CASE("one-sided reflection") {
    const auto p = line_config({-100, -1, 1, 100});
    const auto refl = one_sided_reflection(p, 0, 0.0, HalfSide::Positive);
    CHECK(refl.points[0][0] == doctest::Approx(-100));
    CHECK(refl.points[1][0] == doctest::Approx(-1));
    CHECK(refl.points[2][0] == doctest::Approx(-1));
    CHECK(refl.points[3][0] == doctest::Approx(-100));
    CHECK(is_strong_contraction(p, refl, 0.0));

    // All points on the untouched side: identity.
    const auto neg = line_config({-3, -2});
    const auto same = one_sided_reflection(neg, 0, 0.0, HalfSide::Positive);
    CHECK(same.points[0][0] == -3.0);
    CHECK(same.points[1][0] == -2.0);

    // Idempotence for a fixed (axis, level, side).
    Rng rng(7);
    Configuration c;
    c.dim = 3;
    for (int i = 0; i < 8; ++i) c.points.push_back({rng.normal(), rng.normal(), rng.normal()});
    const auto once = one_sided_reflection(c, 1, 0.25, HalfSide::Negative);
    const auto twice = one_sided_reflection(once, 1, 0.25, HalfSide::Negative);
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 3; ++k) CHECK(once.points[i][k] == twice.points[i][k]);

    // Composites across all axes stay strong contractions at every step.
    Configuration cur = c;
    for (int axis = 0; axis < 3; ++axis) {
        const auto next = one_sided_reflection(cur, axis, 0.1 * axis, HalfSide::Positive);
        CHECK(is_strong_contraction(cur, next));
        CHECK(is_strong_contraction(c, next, 1e-12));
        cur = next;
    }

    CHECK_THROWS_AS(one_sided_reflection(c, 3, 0.0, HalfSide::Positive), std::invalid_argument);
}

TEST_CASE("strong contraction generators") {
    Rng rng(99);
    Configuration c;
    c.dim = 2;
    for (int i = 0; i < 6; ++i) c.points.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5)});

    for (int t = 0; t < 25; ++t) {
        const auto via_refl = random_reflection_composite(c, 1 + t % 4, rng);
        CHECK(is_strong_contraction(c, via_refl, 1e-12));
        CHECK(is_contraction(c, via_refl, 1e-9));
        const auto via_gaps = coordinate_gap_contraction(c, rng);
        CHECK(is_strong_contraction(c, via_gaps, 1e-12));
        CHECK(is_contraction(c, via_gaps, 1e-9));
    }
}

TEST_CASE("circumball basics") {
    const auto two = plane_config({{-1, 0}, {1, 0}});
    const auto cb = circumball(two);
    CHECK(cb.radius == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cb.center[0] == doctest::Approx(0.0));
    CHECK(cb.center[1] == doctest::Approx(0.0));

    const auto one = circumball(plane_config({{2, 3}}));
    CHECK(one.radius == 0.0);

    // Regular simplex of edge lambda: circumradius sqrt(2d/(d+1)) * lambda/2
    // (the equality case of the circumradius-diameter bound).
    for (int d = 1; d <= 6; ++d) {
        const double lambda = 0.75;
        const auto verts = regular_simplex_vertices(d, lambda);
        Configuration c;
        c.dim = d;
        c.points = verts;
        // Check the construction itself: all pairwise distances equal lambda.
        const auto s = pairwise_distances(c);
        CHECK(s.min_pairwise == doctest::Approx(lambda).epsilon(1e-12));
        CHECK(s.max_pairwise == doctest::Approx(lambda).epsilon(1e-12));
        const auto ball = circumball(c);
        const double expect = std::sqrt(2.0 * d / (d + 1.0)) * lambda / 2.0;
        CHECK(ball.radius == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("circumball against exhaustive search") {
    Rng rng(2024);
    for (int inst = 0; inst < 200; ++inst) {
        const int d = 1 + static_cast<int>(rng.next_u64() % 3);
        const int n = 1 + static_cast<int>(rng.next_u64() % 8);
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) {
            Point p(d);
            for (auto& c : p) c = rng.uniform(-2, 2);
            pts.push_back(p);
        }
        const auto fast = circumball(pts);
        const auto brute = circumball_bruteforce(pts);
        CHECK(std::fabs(fast.radius - brute.radius) <=
              1e-10 * std::max(1.0, brute.radius));
        for (const auto& p : pts) CHECK(dist(p, fast.center) <= fast.radius + 1e-9);
        CHECK(fast.support.size() <= static_cast<std::size_t>(d) + 1);
    }
}

TEST_CASE("circumradius never beats the simplex bound") {
    Rng rng(31337);
    for (int inst = 0; inst < 100; ++inst) {
        const int d = 1 + static_cast<int>(rng.next_u64() % 4);
        const int n = 2 + static_cast<int>(rng.next_u64() % 7);
        Configuration c;
        c.dim = d;
        for (int i = 0; i < n; ++i) {
            Point p(d);
            for (auto& x : p) x = rng.uniform(-3, 3);
            c.points.push_back(p);
        }
        const double diam = pairwise_distances(c).max_pairwise;
        const double bound = std::sqrt(2.0 * d / (d + 1.0)) * diam / 2.0;
        CHECK(circumball(c).radius <= bound + 1e-9);
    }
}

TEST_CASE("uniform contraction pair sampler") {
    const auto pair = sample_uniform_contraction_pair(2, 3, 2.0, 0.0, 42);
    CHECK(is_contraction(pair.p, pair.q, 0.0));
    const auto iv = uniform_contraction_interval(pair.p, pair.q);
    REQUIRE(iv.has_value());
    CHECK(iv->first <= 2.0);
    CHECK(iv->second >= 2.0);

    // Determinism: same seed, same bits.
    const auto again = sample_uniform_contraction_pair(2, 3, 2.0, 0.0, 42);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 2; ++k) {
            CHECK(pair.p.points[i][k] == again.p.points[i][k]);
            CHECK(pair.q.points[i][k] == again.q.points[i][k]);
        }

    const auto six = sample_uniform_contraction_pair(2, 6, 0.5, 0.0, 7);
    CHECK(pairwise_distances(six.p).min_pairwise >= 0.5);
    CHECK(pairwise_distances(six.q).max_pairwise <= 0.5);

    // Strong contractions are contractions (random reflection images).
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const auto img = random_reflection_composite(six.p, 2, rng);
        CHECK(is_strong_contraction(six.p, img));
        CHECK(is_contraction(six.p, img, 1e-9));
    }

    // An impossible region errors out instead of spinning forever.
    CHECK_THROWS_AS(sample_uniform_contraction_pair(2, 40, 1.0, 1.0, 3), std::runtime_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "kp/uncond.hpp"
#include "kp/measures.hpp"

using namespace kp;

namespace {

PlacedBodies place(std::vector<UncondBody> bodies, std::vector<Point> translations) {
    PlacedBodies pb;
    pb.bodies = std::move(bodies);
    pb.translations.dim = static_cast<int>(translations.front().size());
    pb.translations.points = std::move(translations);
    return pb;
}

// Generic bisection on member(), used as an oracle for the closed forms.
double slice_halflength_by_bisection(const UncondBody& body, int axis, const Point& offsets) {
    Point x = offsets;
    x[axis] = 0.0;
    if (!body.member(x)) return -1.0;
    double lo = 0.0, hi = 1e-9;
    auto at = [&](double t) {
        Point y = offsets;
        y[axis] = t;
        return body.member(y);
    };
    while (at(hi)) hi *= 2.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (at(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("membership") {
    const auto box = UncondBody::axis_box({1, 2});
    CHECK(box.member({1.0, -2.0})); // corner
    CHECK_FALSE(box.member({1.1, 0.0}));

    const auto l1 = UncondBody::cross_polytope({1, 1});
    CHECK_FALSE(l1.member({0.5, 0.6}));
    CHECK(l1.member({0.5, 0.5}));

    // Sign-flip invariance on random points.
    Rng rng(1);
    const auto lp = UncondBody::scaled_lp_ball({1.0, 0.7, 1.3}, 2.5);
    for (int t = 0; t < 200; ++t) {
        Point x{rng.uniform(-1.2, 1.2), rng.uniform(-1, 1), rng.uniform(-1.5, 1.5)};
        Point flipped = x;
        for (auto& c : flipped)
            if (rng.next_u64() & 1) c = -c;
        CHECK(lp.member(x) == lp.member(flipped));
    }

    // Convexity via midpoints.
    for (int t = 0; t < 200; ++t) {
        Point a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        Point b{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        if (lp.member(a) && lp.member(b)) {
            Point mid(3);
            for (int k = 0; k < 3; ++k) mid[k] = 0.5 * (a[k] + b[k]);
            CHECK(lp.member(mid));
        }
    }
}

TEST_CASE("axis slices") {
    const auto box = UncondBody::axis_box({0.5, 2.0});
    const auto s = axis_slice(box, {1.0, 0.5}, {0, {0.0, 1.0}});
    REQUIRE(s.has_value());
    CHECK(s->center == doctest::Approx(1.0));
    CHECK(s->halflength == doctest::Approx(0.5));

    // Circle chord: halflength sqrt(1 - r^2) at transverse offset r.
    const auto disk = UncondBody::scaled_lp_ball({1, 1}, 2.0);
    const auto chord = axis_slice(disk, {0.0, 0.0}, {0, {0.0, 0.6}});
    REQUIRE(chord.has_value());
    CHECK(chord->halflength == doctest::Approx(std::sqrt(1.0 - 0.36)).epsilon(1e-12));

    // A line missing the body.
    CHECK_FALSE(axis_slice(disk, {0.0, 0.0}, {0, {0.0, 1.5}}).has_value());

    // Closed forms agree with bisection on member(), and centers always
    // equal the translation coordinate.
    Rng rng(2);
    const std::vector<UncondBody> zoo{
        UncondBody::axis_box({0.8, 1.1, 0.6}),
        UncondBody::scaled_lp_ball({1.2, 0.9, 0.7}, 3.0),
        UncondBody::cross_polytope({1.0, 1.4, 0.8}),
        UncondBody::intersection({UncondBody::axis_box({0.9, 0.9, 0.9}),
                                  UncondBody::scaled_lp_ball({1.1, 1.0, 1.2}, 2.0)})};
    for (const auto& body : zoo)
        for (int t = 0; t < 50; ++t) {
            const int axis = static_cast<int>(rng.next_u64() % 3);
            Point translation{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            AxisLine line{axis, {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)}};
            const auto got = axis_slice(body, translation, line);
            Point offsets(3, 0.0);
            for (int k = 0; k < 3; ++k)
                if (k != axis) offsets[k] = line.coords[k] - translation[k];
            const double oracle = slice_halflength_by_bisection(body, axis, offsets);
            if (!got) {
                CHECK(oracle <= 1e-9);
            } else {
                CHECK(got->center == translation[axis]);
                if (oracle >= 0.0) CHECK(got->halflength == doctest::Approx(oracle).epsilon(1e-9));
            }
        }
}

TEST_CASE("union slice lengths") {
    const auto box = UncondBody::axis_box({1.0, 1.0});
    // Two disjoint unit boxes along the x axis: total slice length 4.
    const auto pb = place({box, box}, {{0.0, 0.0}, {5.0, 0.0}});
    CHECK(union_slice_length(pb, {0, {0.0, 0.0}}) == doctest::Approx(4.0));

    // Coincident translates: a single interval.
    const auto dup = place({box, box}, {{1.0, 0.0}, {1.0, 0.0}});
    CHECK(union_slice_length(dup, {0, {0.0, 0.0}}) == doctest::Approx(2.0));

    // The 1D slice inequality: for contractions acting along the slicing
    // axis (the one-coordinate-at-a-time step of the Fubini argument),
    // union slices never grow and intersection slices never shrink.
    Rng rng(3);
    for (int t = 0; t < 300; ++t) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 4);
        std::vector<UncondBody> bodies;
        std::vector<Point> trans;
        for (int i = 0; i < n; ++i) {
            bodies.push_back(UncondBody::axis_box({rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0)}));
            trans.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2)});
        }
        auto p = place(bodies, trans);
        Configuration q_trans = p.translations;
        if (t % 2 == 0) {
            const auto side = (rng.next_u64() & 1) ? HalfSide::Positive : HalfSide::Negative;
            q_trans = one_sided_reflection(p.translations, 0, rng.uniform(-1.5, 1.5), side);
        } else {
            // Shrink the axis-0 gap structure only, leaving transverse
            // coordinates (and hence the per-line interval lengths) fixed.
            std::vector<int> order(n);
            for (int i = 0; i < n; ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return p.translations.points[a][0] < p.translations.points[b][0];
            });
            double prev_old = p.translations.points[order[0]][0];
            double prev_new = prev_old;
            for (int r = 1; r < n; ++r) {
                const double cur = p.translations.points[order[r]][0];
                prev_new += (cur - prev_old) * rng.uniform();
                q_trans.points[order[r]][0] = prev_new;
                prev_old = cur;
            }
        }
        PlacedBodies q = p;
        q.translations = q_trans;
        AxisLine line{0, {0.0, rng.uniform(-2, 2)}};
        CHECK(union_slice_length(p, line) >= union_slice_length(q, line) - 1e-10);
        CHECK(intersection_slice_length(q, line) >= intersection_slice_length(p, line) - 1e-10);
    }
}

TEST_CASE("volume by slicing") {
    // One axis box: exact product of extents.
    const auto box = UncondBody::axis_box({0.5, 0.75});
    const auto single = union_volume_by_slicing(place({box}, {{0.3, -0.2}}), 256);
    CHECK(single.value == doctest::Approx(4 * 0.5 * 0.75).epsilon(1e-6));

    // Two overlapping boxes: inclusion-exclusion.
    const auto b1 = UncondBody::axis_box({1.0, 1.0});
    const auto two = place({b1, b1}, {{0.0, 0.0}, {1.0, 1.0}});
    const auto u = union_volume_by_slicing(two, 512);
    const double expect = 4.0 + 4.0 - 1.0;
    CHECK(std::fabs(u.value - expect) <= u.error_bound + 1e-6);
    const auto inter = intersection_volume_by_slicing(two, 512);
    CHECK(std::fabs(inter.value - 1.0) <= inter.error_bound + 1e-6);

    // Identical translates: intersection is the whole body.
    const auto same = place({b1, b1}, {{0.5, 0.5}, {0.5, 0.5}});
    CHECK(intersection_volume_by_slicing(same, 256).value == doctest::Approx(4.0).epsilon(1e-6));

    // Far apart: zero intersection.
    const auto far = place({b1, b1}, {{0, 0}, {10, 10}});
    CHECK(intersection_volume_by_slicing(far, 64).value == 0.0);

    // Against the Monte Carlo oracle on random instances.
    Rng rng(4);
    for (int t = 0; t < 8; ++t) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 3);
        std::vector<UncondBody> bodies;
        std::vector<Point> trans;
        for (int i = 0; i < n; ++i) {
            switch (rng.next_u64() % 3) {
                case 0: bodies.push_back(UncondBody::axis_box({rng.uniform(0.3, 1), rng.uniform(0.3, 1)})); break;
                case 1: bodies.push_back(UncondBody::scaled_lp_ball({rng.uniform(0.3, 1), rng.uniform(0.3, 1)}, 2.0)); break;
                default: bodies.push_back(UncondBody::cross_polytope({rng.uniform(0.3, 1), rng.uniform(0.3, 1)}));
            }
            trans.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        }
        const auto pb = place(bodies, trans);
        const auto sliced = union_volume_by_slicing(pb, 512);
        Box domain{{-3, -3}, {3, 3}};
        const auto mc = mc_volume(
            [&](const Point& y) {
                for (std::size_t i = 0; i < pb.bodies.size(); ++i) {
                    Point local(2);
                    for (int k = 0; k < 2; ++k) local[k] = y[k] - pb.translations.points[i][k];
                    if (pb.bodies[i].member(local)) return true;
                }
                return false;
            },
            domain, 400000, derive_seed(5, t));
        CHECK(std::fabs(sliced.value - mc.value) <= sliced.error_bound + 4.0 * mc.stderr_);
    }

    CHECK_THROWS_AS(union_volume_by_slicing(place({b1}, {{0.0, 0.0}}), 1), std::invalid_argument);
}

TEST_CASE("exact 1D measures") {
    const auto seg = UncondBody::axis_box({1.0});
    const auto pb = place({seg, seg}, {{0.0}, {5.0}});
    CHECK(union_length_1d(pb) == doctest::Approx(4.0));
    CHECK(intersection_length_1d(pb) == 0.0);

    const auto overlapping = place({seg, seg}, {{0.0}, {1.0}});
    CHECK(union_length_1d(overlapping) == doctest::Approx(3.0));
    CHECK(intersection_length_1d(overlapping) == doctest::Approx(1.0));
}

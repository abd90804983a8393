#include <random>

#include "doctest.h"
#include "opaque/line_measure.hpp"

using namespace opaque;

namespace {

// Quadrature oracle: measure of lines meeting both bodies is the integral
// over directions of the overlap of their offset intervals.
double overlap_integral(const Body& k1, const Body& k2, int steps = 200000) {
    const std::vector<Point> p = body_points(k1), q = body_points(k2);
    double total = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double theta = kPi * (i + 0.5) / steps;
        const Point n{-std::sin(theta), std::cos(theta)};
        double plo = 1e300, phi = -1e300, qlo = 1e300, qhi = -1e300;
        for (const Point& v : p) {
            plo = std::min(plo, dot(n, v));
            phi = std::max(phi, dot(n, v));
        }
        for (const Point& v : q) {
            qlo = std::min(qlo, dot(n, v));
            qhi = std::max(qhi, dot(n, v));
        }
        total += std::max(0.0, std::min(phi, qhi) - std::max(plo, qlo));
    }
    return total * kPi / steps;
}

ConvexPolygon square_at(double cx, double cy, double side) {
    return ConvexPolygon::rectangle(cx - side / 2, cy - side / 2, cx + side / 2, cy + side / 2);
}

}  // namespace

TEST_CASE("measure of lines meeting one body") {
    CHECK(line_measure_single(ConvexPolygon::unit_square()) == 4.0);
    CHECK(line_measure_single(Segment({0, 0}, {3, 4})) == 10.0);
    CHECK(line_measure_single(ConvexPolygon::rectangle(-0.5, -0.5, 1.5, 1.5)) == 8.0);
}

TEST_CASE("meeting measure matches the quadrature oracle") {
    const Body a = square_at(0, 0, 1), b = square_at(10, 0, 1);
    const MeetingMeasure m = meeting_measure(a, b);
    CHECK(m.covers.l_int >= m.covers.l_ext);
    CHECK(m.measure == doctest::Approx(overlap_integral(a, b)).epsilon(1e-6));

    const Body s = Segment({2, 0.3}, {2.5, 1.7});
    const Body t = ConvexPolygon({{0, 0}, {1, 0}, {0.4, 1}});
    CHECK(meeting_measure(s, t).measure == doctest::Approx(overlap_integral(s, t)).epsilon(1e-6));
    CHECK(meeting_measure(t, s).measure == doctest::Approx(meeting_measure(s, t).measure));

    const Body s1 = Segment({0, 0}, {1, 0}), s2 = Segment({0, 1}, {1, 2});
    CHECK(meeting_measure(s1, s2).measure ==
          doctest::Approx(overlap_integral(s1, s2)).epsilon(1e-6));
}

TEST_CASE("meeting measure edge cases") {
    CHECK_THROWS_AS(meeting_measure(square_at(0, 0, 1), square_at(0.5, 0, 1)), OverlapError);
    // Collinear disjoint segments: a single common line, measure zero.
    CHECK(meeting_measure(Segment({0, 0}, {1, 0}), Segment({2, 0}, {3, 0})).measure ==
          doctest::Approx(0.0));

    // A short segment hugging a huge body: almost every line through it
    // also meets the body.
    const Segment s({-0.01, -0.001}, {0.01, -0.001});
    const ConvexPolygon big = ConvexPolygon::rectangle(-100, 0, 100, 200);
    CHECK(meeting_measure(s, big).measure == doctest::Approx(2 * s.length()).epsilon(1e-3));
}

TEST_CASE("midpoint configuration on the side of U2") {
    const double w2 = 1e-3;
    const double expected = 1.0 / std::sqrt(0.25 + 1e-6);
    const double half = 5e-7;
    const Segment s({0.5 - half, -w2}, {0.5 + half, -w2});
    const MeetingMeasure m = meeting_measure(s, ConvexPolygon::unit_square());
    CHECK(m.measure / s.length() == doctest::Approx(expected).epsilon(1e-6));

    const Segment side({-w2, -w2}, {1 + w2, -w2});
    const ConeBound cb = cone_angle_bound(side, ConvexPolygon::unit_square());
    CHECK(std::abs(2 * std::sin(cb.theta_max / 2) - expected) < 1e-10);
    CHECK(cb.apex.x == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("cone bound vanishes far away") {
    const Segment s({1000, 0}, {1000, 1});
    const ConeBound cb = cone_angle_bound(s, ConvexPolygon::unit_square());
    CHECK(cb.theta_max < 2e-3);
    CHECK(cb.bound < 2e-3);
}

TEST_CASE("cone bound dominates the meeting measure") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> c(-3, 3);
    std::uniform_real_distribution<double> r(0.2, 1.5);
    int tested = 0;
    while (tested < 300) {
        const double cx = c(rng), cy = c(rng), rad = r(rng);
        std::vector<Point> pts;
        for (int i = 0; i < 5; ++i) pts.push_back({cx + rad * c(rng) / 3, cy + rad * c(rng) / 3});
        std::vector<Point> hull = convex_hull(pts);
        if (hull.size() < 3) continue;
        const ConvexPolygon body(hull);
        const Segment s({c(rng), c(rng)}, {c(rng), c(rng)});
        if (s.length() < 1e-3 || !bodies_disjoint(s, body)) continue;
        ++tested;
        const ConeBound cb = cone_angle_bound(s, body);
        CHECK(meeting_measure(s, body).measure <= cb.bound + 1e-12);

        // Dense sampling never finds a wider cone than the optimizer.
        double dense = 0.0;
        for (int k = 0; k <= 2000; ++k) dense = std::max(dense, subtended_angle(s.at(k / 2000.0), body));
        CHECK(cb.theta_max >= dense - 1e-12);
    }
}

TEST_CASE("meeting measure is monotone in the first body") {
    const Body inner = square_at(0, 0, 0.5);
    const Body outer = square_at(0, 0, 1.0);
    const Body other = ConvexPolygon({{3, -1}, {4, 0}, {3, 2}});
    CHECK(meeting_measure(inner, other).measure <= meeting_measure(outer, other).measure);
    const Body piece = Segment({-0.2, 0}, {0.2, 0.1});
    CHECK(meeting_measure(piece, other).measure <= meeting_measure(outer, other).measure);
}

TEST_CASE("Monte-Carlo oracle") {
    const McEstimate u = mc_meeting_measure(ConvexPolygon::unit_square(), std::nullopt, 1000000, 1);
    CHECK(std::abs(u.estimate - 4.0) < 3 * u.standard_error);

    const Segment s({0.1, 0.2}, {0.8, 0.5});
    const McEstimate ms = mc_meeting_measure(s, std::nullopt, 1000000, 2);
    CHECK(std::abs(ms.estimate - 2 * s.length()) < 3 * ms.standard_error);

    const Body a = square_at(0, 0, 1), b = square_at(10, 0, 1);
    const McEstimate mab = mc_meeting_measure(a, b, 1000000, 3);
    CHECK(std::abs(mab.estimate - meeting_measure(a, b).measure) < 3 * mab.standard_error);

    const McEstimate again = mc_meeting_measure(a, b, 1000, 3);
    CHECK(again.hits == mc_meeting_measure(a, b, 1000, 3).hits);
}

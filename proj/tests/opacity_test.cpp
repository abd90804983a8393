#include <random>

#include "doctest.h"
#include "opaque/constructions.hpp"
#include "opaque/opacity.hpp"

using namespace opaque;

namespace {

const ConvexPolygon kSquare = ConvexPolygon::unit_square();

Barrier random_barrier(std::mt19937_64& rng, std::size_t max_segments) {
    std::uniform_int_distribution<std::size_t> count(1, max_segments);
    std::uniform_real_distribution<double> c(-0.2, 1.2);
    std::vector<Segment> segs;
    const std::size_t n = count(rng);
    while (segs.size() < n) {
        const Point a{c(rng), c(rng)}, b{c(rng), c(rng)};
        if (distance(a, b) > 1e-3) segs.emplace_back(a, b);
    }
    return Barrier(std::move(segs));
}

}  // namespace

TEST_CASE("coverage of fixed directions") {
    const Barrier diagonals = make_barrier(BarrierKind::two_diagonals).barrier;
    const CoverageReport r0 = coverage_gaps(diagonals, 0.0, kSquare);
    CHECK(r0.gaps.empty());
    CHECK(r0.covered_length == doctest::Approx(1.0));

    const Barrier d1({Segment({0, 0}, {1, 1})});
    const CoverageReport r = coverage_gaps(d1, kPi / 4, kSquare);
    REQUIRE(r.gaps.size() == 2);
    CHECK(r.gap_length() == doctest::Approx(std::sqrt(2.0)));
    CHECK(r.gaps[0].hi == doctest::Approx(r.gaps[1].lo));

    const Barrier sides = make_barrier(BarrierKind::three_sides).barrier;
    for (int k = 0; k < 2000; ++k) {
        const double theta = kPi * k / 2000.0;
        CHECK(coverage_gaps(sides, theta, kSquare).gaps.empty());
    }
}

TEST_CASE("coverage partition identity and monotonicity") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> angle(0.0, kPi);
    for (int k = 0; k < 500; ++k) {
        const Barrier b = random_barrier(rng, 12);
        const double theta = angle(rng);
        const CoverageReport r = coverage_gaps(b, theta, kSquare);
        CHECK(std::abs(r.covered_length + r.gap_length() - width(kSquare, theta)) < 1e-9);
        for (std::size_t i = 1; i < r.gaps.size(); ++i) CHECK(r.gaps[i - 1].hi < r.gaps[i].lo);

        std::vector<Segment> more(b.segments().begin(), b.segments().end());
        more.push_back(random_barrier(rng, 1)[0]);
        CHECK(coverage_gaps(Barrier(more), theta, kSquare).gap_length() <= r.gap_length() + 1e-12);
    }
}

TEST_CASE("find_witness on the classical barriers") {
    for (BarrierKind kind : kOpaqueKinds) {
        CAPTURE(kind_name(kind));
        const Barrier b = make_barrier(kind).barrier;
        const WitnessSearch s = find_witness(b, kSquare, {1e-3, 1e-6});
        CHECK(s.verdict == Verdict::opaque);
        CHECK_FALSE(s.witness);
    }
}

TEST_CASE("removing a side opens a witness") {
    const Barrier sides = make_barrier(BarrierKind::three_sides).barrier;
    const Barrier no_bottom = sides.without(1);
    const WitnessSearch s = find_witness(no_bottom, kSquare);
    REQUIRE(s.verdict == Verdict::witness);
    CHECK(verify_witness(s.witness->line, no_bottom, kSquare, 1e-6));
    // Only lines through the top and bottom sides avoid the two vertical sides.
    CHECK(s.witness->line.theta == doctest::Approx(kPi / 2).epsilon(0.5));
}

TEST_CASE("imperfect structure leaks through a non-main direction") {
    const Barrier b = imperfect_four_direction().barrier;
    const WitnessSearch s = find_witness(b, kSquare);
    REQUIRE(s.verdict == Verdict::witness);
    const double theta = s.witness->line.theta;
    for (double main : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4}) CHECK(std::abs(theta - main) > 1e-6);
    CHECK(verify_witness(s.witness->line, b, kSquare, 1e-6));
}

TEST_CASE("verify_witness") {
    const Line mid = Line::through({0.5, -1}, {0.5, 2});
    CHECK_FALSE(verify_witness(mid, make_barrier(BarrierKind::two_diagonals).barrier, kSquare,
                               1e-6));
    const Barrier left({Segment({0, 0}, {0, 1})});
    CHECK(verify_witness(mid, left, kSquare, 1e-6));
    CHECK(measure_line(mid, left, kSquare).clearance == doctest::Approx(0.5));
    // Missing the square entirely is not a witness.
    CHECK_FALSE(verify_witness(Line::through({2, 0}, {2, 1}), left, kSquare, 1e-6));
}

TEST_CASE("witness soundness on random barriers") {
    std::mt19937_64 rng(202);
    int found = 0;
    for (int k = 0; k < 300; ++k) {
        const Barrier b = random_barrier(rng, 10);
        const WitnessSearch s = find_witness(b, kSquare, {1e-2, 1e-6});
        if (s.verdict == Verdict::witness) {
            ++found;
            CHECK(verify_witness(s.witness->line, b, kSquare, 1e-6));
        }
    }
    CHECK(found > 0);
}

TEST_CASE("main direction slack") {
    const MainDirectionSlack diag =
        main_direction_slack(make_barrier(BarrierKind::two_diagonals).barrier);
    CHECK(diag.diagonal1 == doctest::Approx(0.0));
    CHECK(diag.diagonal2 == doctest::Approx(0.0));
    CHECK(diag.x == doctest::Approx(1.0));
    CHECK(diag.y == doctest::Approx(1.0));

    const MainDirectionSlack imp = main_direction_slack(imperfect_four_direction().barrier);
    CHECK(std::abs(imp.diagonal1) < 1e-12);
    CHECK(std::abs(imp.diagonal2) < 1e-12);
    CHECK(std::abs(imp.x) < 1e-12);
    CHECK(std::abs(imp.y) < 1e-12);

    const MainDirectionSlack h = main_direction_slack(Barrier({Segment({0, 0}, {1, 0})}));
    CHECK(h.diagonal1 == doctest::Approx(-std::sqrt(2.0) / 2));
    CHECK(h.diagonal2 == doctest::Approx(-std::sqrt(2.0) / 2));
    CHECK(h.x == doctest::Approx(0.0));
    CHECK(h.y == doctest::Approx(-1.0));
}

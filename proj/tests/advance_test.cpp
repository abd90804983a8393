#include <random>

#include "doctest.h"
#include "opaque/advance.hpp"
#include "opaque/audit.hpp"
#include "opaque/constructions.hpp"

using namespace opaque;

namespace {

const ConvexPolygon kSquare = ConvexPolygon::unit_square();

void check_monotone(const SweepState& st, double start) {
    double low = start, high = start;
    for (const SweepEvent& e : st.events) {
        CHECK(e.displacement >= 0.0);
        CHECK(e.low_x >= low);
        CHECK(e.high_x >= high);
        low = e.low_x;
        high = e.high_x;
    }
    CHECK(st.anchor_low.x == low);
    CHECK(st.anchor_high.x == high);
}

}  // namespace

TEST_CASE("advance budget at the extremal lengths") {
    const double phi = std::asin(1e-4);
    const AdvanceBudget b = advance_budget(extremal_stats(phi), 1.0 / 20, phi);
    CHECK(b.tan_beta >= 2.635);
    CHECK(b.x3 <= 0.76);
    CHECK(b.total_advance <= 0.8997);
    CHECK(b.total_advance < 0.9);
    // Rounded factors quoted alongside the bound.
    CHECK(b.x_translation <= 1.01 * b.x4);
    CHECK(b.y2 <= 0.38 * b.y1);
    CHECK(b.z_advance <= 1.1 * extremal_stats(phi).z_total);
    CHECK(b.x4 == doctest::Approx(0.1 + 1.5 * std::sin(phi)));

    AdvanceStats bad = extremal_stats(phi);
    bad.x_total = 0.4;
    CHECK_THROWS_AS(advance_budget(bad, 1.0 / 20, phi), std::invalid_argument);
}

TEST_CASE("imperfect structure is beaten by one rotation") {
    const Barrier b = imperfect_four_direction().barrier;
    const AdvanceResult r = run_advance(b);
    REQUIRE(r.outcome == AdvanceOutcome::success);
    REQUIRE(r.witness);
    CHECK(verify_witness(r.witness->line, b, kSquare, 1e-6));
    REQUIRE(r.state.events.size() == 1);
    CHECK(r.state.events[0].kind == EventKind::rotate_ccw);
    CHECK(r.state.events[0].segment == 0);
    CHECK(r.state.anchor_low.x == doctest::Approx(0.65).epsilon(1e-4));
    CHECK(r.state.anchor_high.x == 1.0 / 20);
    check_monotone(r.state, 1.0 / 20);

    const AdvanceBudget budget = advance_budget(band_stats(b), 1.0 / 20, std::asin(1e-4));
    CHECK(r.state.max_anchor_advance(1.0 / 20) <= budget.total_advance + kGeoEps);
}

TEST_CASE("opaque barriers never yield a success") {
    for (BarrierKind k : kOpaqueKinds) {
        CAPTURE(kind_name(k));
        for (BoundingSquare sq : {BoundingSquare::U3, BoundingSquare::U}) {
            AdvanceConfig cfg;
            cfg.bounding_square = sq;
            const AdvanceResult r = run_advance(make_barrier(k).barrier, cfg);
            CHECK(r.outcome == AdvanceOutcome::exhausted);
            CHECK_FALSE(r.witness);
            CHECK(r.state.events.back().kind == EventKind::clamp);
            check_monotone(r.state, cfg.w1);
        }
    }
}

TEST_CASE("event cap") {
    AdvanceConfig cfg;
    cfg.max_events = 0;
    const AdvanceResult r = run_advance(make_barrier(BarrierKind::two_diagonals).barrier, cfg);
    CHECK(r.outcome == AdvanceOutcome::budget_exceeded);
}

TEST_CASE("segments outside the bounding square are flagged") {
    AdvanceConfig cfg;
    cfg.bounding_square = BoundingSquare::U;
    const Barrier b({Segment({0.05, -0.5}, {0.05, 1.5}), Segment({0, 0.2}, {0.3, 0.2})});
    const AdvanceResult r = run_advance(b, cfg);
    REQUIRE_FALSE(r.state.events.empty());
    CHECK(r.state.events[0].outside_bounding);
    CHECK(r.outcome == AdvanceOutcome::success);
}

TEST_CASE("random families: anchors move right and successes verify") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c(-0.5, 1.5);
    std::uniform_int_distribution<int> n(1, 12);
    for (int k = 0; k < 300; ++k) {
        std::vector<Segment> segs;
        const int count = n(rng);
        while (static_cast<int>(segs.size()) < count) {
            const Point a{c(rng), c(rng)}, d{c(rng), c(rng)};
            if (distance(a, d) > 1e-3) segs.emplace_back(a, d);
        }
        const Barrier b(std::move(segs));
        const AdvanceResult r = run_advance(b);
        check_monotone(r.state, 1.0 / 20);
        CHECK(r.state.anchor_low.x <= 1 - 1.0 / 20);
        CHECK(r.state.anchor_high.x <= 1 - 1.0 / 20);
        if (r.outcome == AdvanceOutcome::success) {
            CHECK(verify_witness(r.witness->line, b, kSquare, 1e-6));
        }
    }
}

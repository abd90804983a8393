#include "opaque/constructions.hpp"

#include <cmath>
#include <stdexcept>

namespace opaque {

std::string_view kind_name(BarrierKind kind) {
    switch (kind) {
        case BarrierKind::three_sides: return "three-sides";
        case BarrierKind::two_diagonals: return "two-diagonals";
        case BarrierKind::steiner_corners: return "steiner-corners";
        case BarrierKind::conjectured_optimal: return "conjectured-optimal";
        case BarrierKind::imperfect_four_direction: return "imperfect-four-direction";
    }
    return "?";
}

std::optional<BarrierKind> parse_kind(std::string_view name) {
    for (BarrierKind k : {BarrierKind::three_sides, BarrierKind::two_diagonals,
                          BarrierKind::steiner_corners, BarrierKind::conjectured_optimal,
                          BarrierKind::imperfect_four_direction}) {
        if (kind_name(k) == name) return k;
    }
    return std::nullopt;
}

NamedBarrier known_barrier(BarrierKind kind) {
    const double sqrt3 = std::numbers::sqrt3;
    switch (kind) {
        case BarrierKind::three_sides:
            return {kind,
                    Barrier({Segment({0, 0}, {0, 1}), Segment({0, 0}, {1, 0}),
                             Segment({1, 0}, {1, 1})}),
                    3.0};
        case BarrierKind::two_diagonals:
            return {kind, Barrier({Segment({0, 0}, {1, 1}), Segment({1, 0}, {0, 1})}),
                    2.0 * std::numbers::sqrt2};
        case BarrierKind::steiner_corners: {
            // Steiner points on x = 1/2; every edge meets its neighbours at 120°.
            const Point low{0.5, sqrt3 / 6.0};
            const Point high{0.5, 1.0 - sqrt3 / 6.0};
            return {kind,
                    Barrier({Segment({0, 0}, low), Segment({1, 0}, low), Segment(low, high),
                             Segment({0, 1}, high), Segment({1, 1}, high)}),
                    1.0 + sqrt3};
        }
        case BarrierKind::conjectured_optimal: {
            const double c = 0.5 - sqrt3 / 6.0;
            const Point hub{c, c};
            return {kind,
                    Barrier({Segment({0.5, 0.5}, {1, 1}), Segment({0, 1}, hub),
                             Segment({0, 0}, hub), Segment({1, 0}, hub)}),
                    std::numbers::sqrt2 + std::sqrt(6.0) / 2.0};
        }
        case BarrierKind::imperfect_four_direction: break;
    }
    throw std::invalid_argument("imperfect_four_direction has its own constructor");
}

NamedBarrier imperfect_four_direction() {
    // A pinwheel on the boundary: half of each side, rotating around the
    // square. Horizontal members tile [0,1] in x, vertical members tile
    // [0,1] in y, and x+y resp. x-y of the four pieces tile [0,2] resp.
    // [-1,1].
    return {BarrierKind::imperfect_four_direction,
            Barrier({Segment({0, 0}, {0.5, 0}), Segment({0.5, 1}, {1, 1}),
                     Segment({1, 0}, {1, 0.5}), Segment({0, 0.5}, {0, 1})}),
            2.0};
}

NamedBarrier make_barrier(BarrierKind kind) {
    if (kind == BarrierKind::imperfect_four_direction) return imperfect_four_direction();
    return known_barrier(kind);
}

}  // namespace opaque

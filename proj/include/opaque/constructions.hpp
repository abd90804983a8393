#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "opaque/geometry.hpp"

namespace opaque {

enum class BarrierKind {
    three_sides,
    two_diagonals,
    steiner_corners,
    conjectured_optimal,
    imperfect_four_direction,
};

inline constexpr BarrierKind kOpaqueKinds[] = {
    BarrierKind::three_sides,
    BarrierKind::two_diagonals,
    BarrierKind::steiner_corners,
    BarrierKind::conjectured_optimal,
};

/// Hyphenated CLI name, e.g. "conjectured-optimal".
std::string_view kind_name(BarrierKind kind);
std::optional<BarrierKind> parse_kind(std::string_view name);

struct NamedBarrier {
    BarrierKind kind;
    Barrier barrier;
    double closed_form_length;
};

/// The classical barriers of the unit square: three sides (3), both
/// diagonals (2√2), the Steiner tree of the corners (1 + √3), and the
/// shortest known barrier (√2 + √6/2). Throws for imperfect_four_direction.
NamedBarrier known_barrier(BarrierKind kind);

/// Four axis-parallel segments of total length 2 whose projections tile
/// both sides and both diagonals of the unit square exactly, yet which
/// leave other directions unblocked.
NamedBarrier imperfect_four_direction();

NamedBarrier make_barrier(BarrierKind kind);

}  // namespace opaque

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "opaque/geometry.hpp"

namespace opaque {

/// A convex body for line-measure computations: a polygon or a segment.
using Body = std::variant<ConvexPolygon, Segment>;

std::vector<Point> body_points(const Body& body);

class OverlapError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Measure of all lines meeting a convex body: its perimeter, or 2|s|.
double line_measure_single(const Body& body);

/// True when the two bodies are separated by more than kGeoEps.
bool bodies_disjoint(const Body& k1, const Body& k2);

struct CoverLengths {
    double l_ext = 0.0;  // boundary length of conv(K1 ∪ K2)
    double l_int = 0.0;  // crossed string around K1 and K2
};

struct MeetingMeasure {
    CoverLengths covers;
    double measure = 0.0;  // l_int - l_ext
};

/// Measure of the lines meeting both of two disjoint convex bodies.
///
/// The crossed string consists of the two internal common tangents plus the
/// far-side boundary arcs. Writing c for the crossing point of the two
/// tangents, the string length is per(conv(K1 ∪ {c})) + per(conv(K2 ∪ {c})).
/// Throws OverlapError if the bodies meet.
MeetingMeasure meeting_measure(const Body& k1, const Body& k2);

/// Angle subtended by `body` at a point outside it.
double subtended_angle(Point apex, const ConvexPolygon& body);

struct ConeBound {
    double theta_max = 0.0;  // max over apices on s of the angle subtended by B
    Point apex;              // where theta_max is attained
    double bound = 0.0;      // 2 sin(theta_max / 2) |s|
};

/// Upper bound on the measure of lines meeting both `s` and `body`, from
/// the widest minimal cone with apex on `s` containing `body`. The maximum
/// is located by dense sampling followed by golden-section refinement.
ConeBound cone_angle_bound(const Segment& s, const ConvexPolygon& body,
                           std::size_t samples = 65);

struct McEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::size_t hits = 0;
    std::size_t samples = 0;
};

/// Monte-Carlo estimate of the measure of lines meeting `k1` (and `k2`,
/// when given). Lines are drawn uniformly in (theta, p) over the band of
/// lines meeting a disc around the bodies. Deterministic for a given seed.
McEstimate mc_meeting_measure(const Body& k1, const std::optional<Body>& k2,
                              std::size_t samples, std::uint64_t seed);

}  // namespace opaque

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "opaque/geometry.hpp"

namespace opaque {

/// Uncovered offsets of one line direction.
struct CoverageReport {
    double theta = 0.0;
    Interval body;               // offsets of the body's lines
    std::vector<Interval> gaps;  // disjoint, sorted, inside `body`
    double covered_length = 0.0;

    double gap_length() const;
};

/// Offsets of direction-`theta` lines that meet `body` but miss every
/// barrier segment. Gaps shorter than kGeoEps are treated as covered.
CoverageReport coverage_gaps(const Barrier& barrier, double theta, const ConvexPolygon& body);

/// A line that crosses the body and stays clear of the barrier.
struct WitnessLine {
    Line line;
    double clearance = 0.0;    // min distance to any barrier segment
    double penetration = 0.0;  // length of line ∩ body
};

struct WitnessConfig {
    double angular_step = 1e-4;
    double min_clearance = 1e-6;
};

enum class Verdict {
    witness,       // a verified witness line was found
    opaque,        // no uncovered offsets at any scanned direction
    inconclusive,  // uncovered offsets exist but none clears min_clearance
};

const char* to_string(Verdict v);

struct WitnessSearch {
    Verdict verdict = Verdict::opaque;
    std::optional<WitnessLine> witness;
    double largest_gap = 0.0;  // largest gap seen at any scanned direction
    std::size_t directions_scanned = 0;
};

/// Direction scan over a uniform grid merged with every critical direction
/// (directions through two of the barrier endpoints / body vertices) and
/// the midpoints between consecutive critical directions. Directions are
/// scanned in increasing order; the first verified witness wins.
WitnessSearch find_witness(const Barrier& barrier, const ConvexPolygon& body,
                           const WitnessConfig& config = {});

/// Independent check of a claimed witness from point-line distances.
bool verify_witness(const Line& line, const Barrier& barrier, const ConvexPolygon& body,
                    double min_clearance);

/// Measured clearance and penetration of a line.
WitnessLine measure_line(const Line& line, const Barrier& barrier, const ConvexPolygon& body);

/// Excess projection length in the four main directions of the unit square.
struct MainDirectionSlack {
    double diagonal1 = 0.0;  // sum l_i |cos theta_i| - sqrt 2, theta_i measured from d1
    double diagonal2 = 0.0;  // sum l_i |sin theta_i| - sqrt 2
    double x = 0.0;          // sum l_i |cos alpha_i| - 1
    double y = 0.0;          // sum l_i |sin alpha_i| - 1
};

MainDirectionSlack main_direction_slack(const Barrier& barrier);

}  // namespace opaque

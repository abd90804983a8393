#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "opaque/opacity.hpp"

namespace opaque {

enum class BoundingSquare { U3, U };

struct AdvanceConfig {
    double phi = std::asin(1e-4);
    double w1 = 1.0 / 20.0;
    double w2 = 1.0 / 1000.0;
    BoundingSquare bounding_square = BoundingSquare::U3;
    double min_clearance = 1e-6;
    std::size_t max_events = 10000;
};

enum class EventKind { rotate_cw, rotate_ccw, translate, clamp };

const char* to_string(EventKind k);

struct SweepEvent {
    EventKind kind = EventKind::translate;
    std::size_t segment = 0;     // triggering segment index
    double displacement = 0.0;   // rightward move of the moving anchor(s)
    bool outside_bounding = false;
    bool resweep = false;        // segment already triggered an earlier event
    double low_x = 0.0;          // anchor positions after the event
    double high_x = 0.0;
};

struct SweepState {
    Point anchor_low;
    Point anchor_high;
    std::vector<SweepEvent> events;

    Line line() const { return Line::through(anchor_low, anchor_high); }
    std::size_t resweeps() const;
    // Rightward travel of the farther-moved anchor since the start.
    double max_anchor_advance(double start_x) const;
};

enum class AdvanceOutcome { success, exhausted, budget_exceeded };

const char* to_string(AdvanceOutcome o);

struct AdvanceResult {
    AdvanceOutcome outcome = AdvanceOutcome::exhausted;
    std::optional<WitnessLine> witness;
    SweepState state;
};

AdvanceResult run_advance(const Barrier& barrier, const AdvanceConfig& config = {});

// Lengths of the class/region pieces the budget is computed from.
struct AdvanceStats {
    double x_total = 0.0;
    double y_total = 0.0;
    double z_total = 0.0;
    double x_low = 0.0;    // |X ∩ U_low|
    double x_high = 0.0;   // |X ∩ U_high|
    double y_left = 0.0;   // |Y ∩ U_left|
    double y_right = 0.0;  // |Y ∩ U_right|
};

// Stats of a barrier meeting every bound of the region-weight lemmas with
// equality (the extremal case of the budget argument).
AdvanceStats extremal_stats(double phi);

struct AdvanceBudget {
    double tan_beta = 0.0;
    double x1 = 0.0, x3 = 0.0, x4 = 0.0, y1 = 0.0, y2 = 0.0;
    double z_advance = 0.0;
    double x_translation = 0.0;
    double total_advance = 0.0;
};

AdvanceBudget advance_budget(const AdvanceStats& stats, double w1, double phi);

}  // namespace opaque

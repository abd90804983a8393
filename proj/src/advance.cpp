#include "opaque/advance.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace opaque {

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::rotate_cw: return "rotate_cw";
        case EventKind::rotate_ccw: return "rotate_ccw";
        case EventKind::translate: return "translate";
        case EventKind::clamp: return "clamp";
    }
    return "?";
}

const char* to_string(AdvanceOutcome o) {
    switch (o) {
        case AdvanceOutcome::success: return "success";
        case AdvanceOutcome::exhausted: return "exhausted";
        case AdvanceOutcome::budget_exceeded: return "budget_exceeded";
    }
    return "?";
}

std::size_t SweepState::resweeps() const {
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(), [](const SweepEvent& e) { return e.resweep; }));
}

double SweepState::max_anchor_advance(double start_x) const {
    return std::max(anchor_low.x, anchor_high.x) - start_x;
}

namespace {

struct Sweep {
    const Barrier& barrier;
    const AdvanceConfig& cfg;
    double y_low, y_high;   // anchor heights
    double margin;          // horizontal clearance we aim for past a segment
    ConvexPolygon square;   // bounding square
    ConvexPolygon band_low, band_high;
    double x_limit;
    SweepState state;
    std::set<std::size_t> triggered;

    double height() const { return y_high - y_low; }

    double x_at(double y) const {
        const double t = (y - y_low) / height();
        return state.anchor_low.x + (state.anchor_high.x - state.anchor_low.x) * t;
    }

    bool blocks(const Segment& s) const {
        return distance(state.line(), s) < cfg.min_clearance;
    }

    SweepEvent make_event(EventKind kind, std::size_t i, double moved) {
        SweepEvent e{kind, i, moved, false, triggered.count(i) > 0};
        const Segment& s = barrier[i];
        e.outside_bounding = !(square.contains(s.a()) && square.contains(s.b()));
        triggered.insert(i);
        return e;
    }

    // Required anchor_high for the piece to lie left of the line, pivoting
    // about anchor_low.
    double pivot_low_target(const Segment& piece) const {
        double target = state.anchor_high.x;
        for (const Point& p : {piece.a(), piece.b()}) {
            const double t = (p.y - y_low) / height();
            if (t <= 0.0) continue;
            const double xl = state.anchor_low.x;
            target = std::max(target, xl + (p.x + margin - xl) / t);
        }
        return target;
    }

    double pivot_high_target(const Segment& piece) const {
        double target = state.anchor_low.x;
        for (const Point& p : {piece.a(), piece.b()}) {
            const double t = (y_high - p.y) / height();
            if (t <= 0.0) continue;
            const double xh = state.anchor_high.x;
            target = std::max(target, xh + (p.x + margin - xh) / t);
        }
        return target;
    }

    double shift_target(const Segment& s) const {
        double shift = 0.0;
        for (const Point& p : {s.a(), s.b()}) shift = std::max(shift, p.x + margin - x_at(p.y));
        return shift > 0.0 ? shift : margin;
    }

    std::optional<std::size_t> band_trigger(const ConvexPolygon& band) const {
        for (std::size_t i = 0; i < barrier.size(); ++i) {
            if (classify(barrier[i], cfg.phi).tag != AngleTag::X) continue;
            const auto piece = clip(barrier[i], band);
            if (piece && blocks(*piece)) return i;
        }
        return std::nullopt;
    }

    // Returns false once an anchor would pass the right limit.
    bool move_to(double new_low, double new_high) {
        if (new_low <= x_limit && new_high <= x_limit) {
            state.anchor_low.x = new_low;
            state.anchor_high.x = new_high;
            state.events.back().low_x = new_low;
            state.events.back().high_x = new_high;
            return true;
        }
        SweepEvent clamp;
        clamp.kind = EventKind::clamp;
        clamp.segment = state.events.back().segment;
        const double low = std::min(new_low, x_limit), high = std::min(new_high, x_limit);
        clamp.displacement = std::max(low - state.anchor_low.x, high - state.anchor_high.x);
        state.anchor_low.x = clamp.low_x = low;
        state.anchor_high.x = clamp.high_x = high;
        state.events.back().low_x = low;
        state.events.back().high_x = high;
        state.events.push_back(clamp);
        return false;
    }
};

}  // namespace

AdvanceResult run_advance(const Barrier& barrier, const AdvanceConfig& cfg) {
    if (!(cfg.w1 > 0.0 && cfg.w1 < 0.5)) throw std::invalid_argument("w1 must lie in (0, 1/2)");
    if (!(cfg.phi > 0.0 && cfg.phi < kPi / 4)) throw std::invalid_argument("phi must lie in (0, pi/4)");
    if (!(cfg.min_clearance > 0.0)) throw std::invalid_argument("min_clearance must be positive");

    const bool u3 = cfg.bounding_square == BoundingSquare::U3;
    const double lo = u3 ? -0.5 : 0.0, hi = u3 ? 1.5 : 1.0;
    const double w2 = u3 ? cfg.w2 : 0.0;
    Sweep sw{barrier,
             cfg,
             lo,
             hi,
             1.01 * std::numbers::sqrt2 * cfg.min_clearance + 1e-12,
             ConvexPolygon::rectangle(lo, lo, hi, hi),
             ConvexPolygon::rectangle(0, -w2, 1, cfg.w1),
             ConvexPolygon::rectangle(0, 1 - cfg.w1, 1, 1 + w2),
             1.0 - cfg.w1,
             {},
             {}};
    sw.state.anchor_low = {cfg.w1, lo};
    sw.state.anchor_high = {cfg.w1, hi};

    const ConvexPolygon unit = ConvexPolygon::unit_square();
    AdvanceResult out;
    while (true) {
        const Line line = sw.state.line();
        if (verify_witness(line, barrier, unit, cfg.min_clearance)) {
            out.outcome = AdvanceOutcome::success;
            out.witness = measure_line(line, barrier, unit);
            break;
        }
        if (sw.state.events.size() >= cfg.max_events) {
            out.outcome = AdvanceOutcome::budget_exceeded;
            break;
        }

        bool inside = true;
        if (auto i = sw.band_trigger(sw.band_high)) {
            const double target = sw.pivot_low_target(*clip(barrier[*i], sw.band_high));
            const double moved = target - sw.state.anchor_high.x;
            sw.state.events.push_back(sw.make_event(EventKind::rotate_cw, *i, moved));
            inside = sw.move_to(sw.state.anchor_low.x, target);
        } else if (auto j = sw.band_trigger(sw.band_low)) {
            const double target = sw.pivot_high_target(*clip(barrier[*j], sw.band_low));
            const double moved = target - sw.state.anchor_low.x;
            sw.state.events.push_back(sw.make_event(EventKind::rotate_ccw, *j, moved));
            inside = sw.move_to(target, sw.state.anchor_high.x);
        } else {
            std::size_t k = 0;
            while (k < barrier.size() && !sw.blocks(barrier[k])) ++k;
            if (k == barrier.size()) {
                // Blocked only by the penetration requirement; cannot happen
                // while both anchors stay inside [w1, 1 - w1].
                out.outcome = AdvanceOutcome::exhausted;
                break;
            }
            const double shift = sw.shift_target(barrier[k]);
            sw.state.events.push_back(sw.make_event(EventKind::translate, k, shift));
            inside = sw.move_to(sw.state.anchor_low.x + shift, sw.state.anchor_high.x + shift);
        }
        if (!inside) {
            out.outcome = AdvanceOutcome::exhausted;
            break;
        }
    }
    out.state = std::move(sw.state);
    return out;
}

AdvanceStats extremal_stats(double phi) {
    AdvanceStats s;
    s.x_total = s.y_total = 1.0 + 1.5 * std::sin(phi);
    s.z_total = 2.0 * std::sin(phi);
    s.x_low = s.x_high = s.y_left = s.y_right = 0.45;
    return s;
}

AdvanceBudget advance_budget(const AdvanceStats& stats, double w1, double phi) {
    AdvanceBudget b;
    b.x1 = stats.x_total - 0.45;
    if (!(b.x1 > 0.0)) throw std::invalid_argument("|X| - 0.45 must be positive");
    b.tan_beta = (1.5 - w1 - b.x1 * std::sin(phi)) / (b.x1 * std::cos(phi));
    if (!(b.tan_beta > 0.0)) throw std::invalid_argument("slope bound is not positive");
    const double beta = std::atan(b.tan_beta);
    b.x3 = 2.0 / b.tan_beta;
    b.x4 = std::max(0.0, stats.x_total - stats.x_low - stats.x_high);
    b.y1 = std::max(0.0, stats.y_total - stats.y_left - stats.y_right);
    b.x_translation = std::sin(beta + phi) / std::sin(beta) * b.x4;
    b.y2 = std::cos(beta - phi) / std::sin(beta) * b.y1;
    b.z_advance = stats.z_total / std::sin(beta);
    b.total_advance = b.x3 + b.x_translation + b.y2 + b.z_advance;
    return b;
}

}  // namespace opaque

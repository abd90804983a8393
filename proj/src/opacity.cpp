#include "opaque/opacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opaque {

double CoverageReport::gap_length() const {
    double total = 0.0;
    for (const Interval& g : gaps) total += g.length();
    return total;
}

CoverageReport coverage_gaps(const Barrier& barrier, double theta, const ConvexPolygon& body) {
    CoverageReport report;
    report.theta = theta;
    report.body = body.offsets(theta);

    std::vector<Interval> spans;
    spans.reserve(barrier.size());
    for (const Segment& s : barrier.segments()) spans.push_back(project_normal(s, theta));
    std::sort(spans.begin(), spans.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

    // Sweep the sorted projections, emitting the uncovered pieces of `body`.
    double reach = report.body.lo;
    for (const Interval& span : spans) {
        if (span.lo > reach) {
            const double hi = std::min(span.lo, report.body.hi);
            if (hi - reach >= kGeoEps) report.gaps.push_back({reach, hi});
        }
        reach = std::max(reach, span.hi);
        if (reach >= report.body.hi) break;
    }
    if (report.body.hi - reach >= kGeoEps) report.gaps.push_back({reach, report.body.hi});

    // Measure of (union of spans) ∩ body, merged independently of the gaps.
    double covered = 0.0;
    double run_lo = 0.0;
    double run_hi = -std::numeric_limits<double>::infinity();
    auto flush = [&] {
        const double lo = std::max(run_lo, report.body.lo);
        const double hi = std::min(run_hi, report.body.hi);
        if (hi > lo) covered += hi - lo;
    };
    for (const Interval& span : spans) {
        if (span.lo > run_hi) {
            flush();
            run_lo = span.lo;
            run_hi = span.hi;
        } else {
            run_hi = std::max(run_hi, span.hi);
        }
    }
    flush();
    report.covered_length = covered;
    return report;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::witness: return "witness";
        case Verdict::opaque: return "opaque";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

WitnessLine measure_line(const Line& line, const Barrier& barrier, const ConvexPolygon& body) {
    WitnessLine out{line, std::numeric_limits<double>::infinity(), body.chord_length(line)};
    for (const Segment& s : barrier.segments()) {
        out.clearance = std::min(out.clearance, distance(line, s));
    }
    return out;
}

bool verify_witness(const Line& line, const Barrier& barrier, const ConvexPolygon& body,
                    double min_clearance) {
    const WitnessLine m = measure_line(line, barrier, body);
    return m.clearance >= min_clearance && m.penetration >= min_clearance;
}

namespace {

std::vector<double> candidate_directions(const Barrier& barrier, const ConvexPolygon& body,
                                         double step) {
    std::vector<Point> pts;
    for (const Segment& s : barrier.segments()) {
        pts.push_back(s.a());
        pts.push_back(s.b());
    }
    for (const Point& v : body.vertices()) pts.push_back(v);

    std::vector<double> critical;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (distance(pts[i], pts[j]) < kGeoEps) continue;
            critical.push_back(Line::through(pts[i], pts[j]).theta);
        }
    }
    std::sort(critical.begin(), critical.end());
    critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

    std::vector<double> out = critical;
    // The endpoint order is fixed strictly between critical directions, so
    // one probe per open arc sees every gap that arc can have.
    for (std::size_t i = 0; i < critical.size(); ++i) {
        const double a = critical[i];
        const double b = i + 1 < critical.size() ? critical[i + 1] : critical[0] + kPi;
        out.push_back(normalize_half_turn(0.5 * (a + b)));
    }
    const auto grid = static_cast<std::size_t>(std::ceil(kPi / step));
    for (std::size_t k = 0; k < grid; ++k) {
        const double theta = static_cast<double>(k) * step;
        if (theta < kPi) out.push_back(theta);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

WitnessSearch find_witness(const Barrier& barrier, const ConvexPolygon& body,
                           const WitnessConfig& config) {
    if (!(config.angular_step > 0.0)) throw std::invalid_argument("angular_step must be > 0");
    const double clearance = config.min_clearance;
    WitnessSearch search;
    bool near_miss = false;

    for (const double theta : candidate_directions(barrier, body, config.angular_step)) {
        ++search.directions_scanned;
        const CoverageReport report = coverage_gaps(barrier, theta, body);
        for (const Interval& gap : report.gaps) {
            search.largest_gap = std::max(search.largest_gap, gap.length());
            near_miss = true;
            if (gap.length() < 2.0 * clearance) continue;
            // Gap midpoint first; then the clear offsets nearest the body's
            // interior, for gaps running along the body's edge.
            const double probes[] = {gap.midpoint(), gap.hi - clearance, gap.lo + clearance};
            for (const double p : probes) {
                const Line line{theta, p};
                const WitnessLine w = measure_line(line, barrier, body);
                if (w.clearance >= clearance && w.penetration >= clearance) {
                    search.verdict = Verdict::witness;
                    search.witness = w;
                    return search;
                }
            }
        }
    }
    search.verdict = near_miss ? Verdict::inconclusive : Verdict::opaque;
    return search;
}

MainDirectionSlack main_direction_slack(const Barrier& barrier) {
    const double sqrt2 = std::numbers::sqrt2;
    MainDirectionSlack out;
    double d1 = 0.0, d2 = 0.0, x = 0.0, y = 0.0;
    for (const Segment& s : barrier.segments()) {
        const double len = s.length();
        const double alpha = s.direction_angle();
        const double theta = alpha - kPi / 4;
        d1 += len * std::abs(std::cos(theta));
        d2 += len * std::abs(std::sin(theta));
        x += len * std::abs(std::cos(alpha));
        y += len * std::abs(std::sin(alpha));
    }
    out.diagonal1 = d1 - sqrt2;
    out.diagonal2 = d2 - sqrt2;
    out.x = x - 1.0;
    out.y = y - 1.0;
    return out;
}

}  // namespace opaque

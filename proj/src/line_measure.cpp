#include "opaque/line_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace opaque {

namespace {

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
};

Extent project(std::span<const Point> pts, Point axis) {
    Extent e;
    for (const Point& p : pts) {
        const double d = dot(axis, p);
        e.lo = std::min(e.lo, d);
        e.hi = std::max(e.hi, d);
    }
    return e;
}

void add_axes(std::span<const Point> pts, std::vector<Point>& axes) {
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point e = pts[(i + 1) % n] - pts[i];
        const double len = norm(e);
        if (len < kGeoEps) continue;
        axes.push_back({e.x / len, e.y / len});
        axes.push_back({-e.y / len, e.x / len});
    }
}

Point intersect(const Line& l1, const Line& l2) {
    const Point n1 = l1.normal();
    const Point n2 = l2.normal();
    const double det = cross(n1, n2);
    return {(l1.p * n2.y - l2.p * n1.y) / det, (n1.x * l2.p - n2.x * l1.p) / det};
}

double golden_max(const auto& f, double lo, double hi, double& best_t) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    best_t = fc >= fd ? c : d;
    return std::max(fc, fd);
}

}  // namespace

std::vector<Point> body_points(const Body& body) {
    if (const auto* poly = std::get_if<ConvexPolygon>(&body)) {
        return {poly->vertices().begin(), poly->vertices().end()};
    }
    const Segment& s = std::get<Segment>(body);
    return {s.a(), s.b()};
}

double line_measure_single(const Body& body) {
    if (const auto* poly = std::get_if<ConvexPolygon>(&body)) return poly->perimeter();
    return 2.0 * std::get<Segment>(body).length();
}

bool bodies_disjoint(const Body& k1, const Body& k2) {
    const std::vector<Point> p = body_points(k1);
    const std::vector<Point> q = body_points(k2);
    std::vector<Point> axes;
    add_axes(p, axes);
    add_axes(q, axes);
    for (const Point& axis : axes) {
        const Extent a = project(p, axis);
        const Extent b = project(q, axis);
        if (a.hi + kGeoEps < b.lo || b.hi + kGeoEps < a.lo) return true;
    }
    return false;
}

MeetingMeasure meeting_measure(const Body& k1, const Body& k2) {
    if (!bodies_disjoint(k1, k2)) throw OverlapError("bodies intersect");
    const std::vector<Point> p = body_points(k1);
    const std::vector<Point> q = body_points(k2);

    std::vector<Point> all = p;
    all.insert(all.end(), q.begin(), q.end());
    MeetingMeasure out;
    out.covers.l_ext = hull_perimeter(all);

    // Internal common tangents: lines through a vertex of each body with the
    // bodies on opposite closed sides.
    std::vector<Line> tangents;
    for (const Point& u : p) {
        for (const Point& v : q) {
            const double len = distance(u, v);
            int p_side = 0, q_side = 0;
            bool ok = true;
            for (const Point& r : p) {
                const double o = orient(u, v, r) / len;
                if (std::abs(o) <= kGeoEps) continue;
                const int sgn = o > 0 ? 1 : -1;
                if (p_side == 0) p_side = sgn;
                if (sgn != p_side) ok = false;
            }
            for (const Point& r : q) {
                const double o = orient(u, v, r) / len;
                if (std::abs(o) <= kGeoEps) continue;
                const int sgn = o > 0 ? 1 : -1;
                if (q_side == 0) q_side = sgn;
                if (sgn != q_side) ok = false;
            }
            if (!ok || (p_side != 0 && p_side == q_side)) continue;
            const Line line = Line::through(u, v);
            const bool seen = std::any_of(tangents.begin(), tangents.end(), [&](const Line& t) {
                return t.distance(u) <= kGeoEps && t.distance(v) <= kGeoEps;
            });
            if (!seen) tangents.push_back(line);
        }
    }
    if (tangents.size() < 2) {
        // All points collinear: only one line meets both bodies.
        out.covers.l_int = out.covers.l_ext;
        return out;
    }
    const Point crossing = intersect(tangents[0], tangents[1]);
    std::vector<Point> pc = p;
    pc.push_back(crossing);
    std::vector<Point> qc = q;
    qc.push_back(crossing);
    out.covers.l_int = hull_perimeter(pc) + hull_perimeter(qc);
    out.measure = out.covers.l_int - out.covers.l_ext;
    return out;
}

double subtended_angle(Point apex, const ConvexPolygon& body) {
    double best = 0.0;
    const auto verts = body.vertices();
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const Point a = verts[i] - apex;
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            const Point b = verts[j] - apex;
            best = std::max(best, std::atan2(std::abs(cross(a, b)), dot(a, b)));
        }
    }
    return best;
}

ConeBound cone_angle_bound(const Segment& s, const ConvexPolygon& body, std::size_t samples) {
    if (!bodies_disjoint(Body{s}, Body{body})) throw OverlapError("segment meets the body");
    samples = std::max<std::size_t>(samples, 3);
    auto angle_at = [&](double t) { return subtended_angle(s.at(t), body); };

    std::size_t best_k = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(samples - 1);
        const double a = angle_at(t);
        if (a > best) {
            best = a;
            best_k = k;
        }
    }
    const double step = 1.0 / static_cast<double>(samples - 1);
    double best_t = static_cast<double>(best_k) * step;
    const double lo = std::max(0.0, best_t - step);
    const double hi = std::min(1.0, best_t + step);
    double refined_t = best_t;
    const double refined = golden_max(angle_at, lo, hi, refined_t);
    if (refined > best) {
        best = refined;
        best_t = refined_t;
    }

    ConeBound out;
    out.theta_max = best;
    out.apex = s.at(best_t);
    out.bound = 2.0 * std::sin(best / 2.0) * s.length();
    return out;
}

McEstimate mc_meeting_measure(const Body& k1, const std::optional<Body>& k2,
                              std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("samples must be >= 1");
    const std::vector<Point> p = body_points(k1);
    const std::vector<Point> q = k2 ? body_points(*k2) : std::vector<Point>{};

    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    for (const auto* set : {&p, &q}) {
        for (const Point& v : *set) {
            x0 = std::min(x0, v.x);
            y0 = std::min(y0, v.y);
            x1 = std::max(x1, v.x);
            y1 = std::max(y1, v.y);
        }
    }
    const Point center{0.5 * (x0 + x1), 0.5 * (y0 + y1)};
    const double half_side = 2.0 * 0.5 * std::max(x1 - x0, y1 - y0);
    const double radius = half_side * std::numbers::sqrt2;
    const double window = kPi * 2.0 * radius;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kPi);
    std::uniform_real_distribution<double> offset(-radius, radius);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double theta = angle(rng);
        const Point n{-std::sin(theta), std::cos(theta)};
        const double pline = dot(n, center) + offset(rng);
        const Extent e1 = project(p, n);
        if (pline < e1.lo || pline > e1.hi) continue;
        if (k2) {
            const Extent e2 = project(q, n);
            if (pline < e2.lo || pline > e2.hi) continue;
        }
        ++hits;
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    McEstimate out;
    out.hits = hits;
    out.samples = samples;
    out.estimate = window * frac;
    out.standard_error = window * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
    return out;
}

}  // namespace opaque

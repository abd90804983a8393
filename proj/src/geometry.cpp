#include "opaque/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace opaque {

namespace {

// Direction angle of a vector, in [0, pi); v and -v map to the same value.
double half_turn_angle(Point v) {
    if (v.y < 0.0 || (v.y == 0.0 && v.x < 0.0)) v = Point{-v.x, -v.y};
    const double a = std::atan2(v.y, v.x);
    return a >= kPi ? 0.0 : a;
}

std::vector<HalfPlane> edge_planes(std::span<const Point> ccw) {
    std::vector<HalfPlane> planes;
    planes.reserve(ccw.size());
    for (std::size_t i = 0; i < ccw.size(); ++i) {
        const Point a = ccw[i];
        const Point b = ccw[(i + 1) % ccw.size()];
        const Point e = b - a;
        const double len = norm(e);
        const Point outward{e.y / len, -e.x / len};
        planes.push_back({outward, dot(outward, a)});
    }
    return planes;
}

// Cyrus-Beck clipping of origin + t*dir, t in [t0, t1], against half-planes
// with unit normals. Returns false if nothing is left.
bool clip_range(Point origin, Point dir, std::span<const HalfPlane> planes, double& t0,
                double& t1) {
    for (const HalfPlane& h : planes) {
        const double denom = dot(h.normal, dir);
        const double slack = h.offset - dot(h.normal, origin);
        if (std::abs(denom) <= std::numeric_limits<double>::epsilon() * norm(dir)) {
            if (slack < -kGeoEps) return false;
            continue;
        }
        const double t = slack / denom;
        if (denom > 0.0) {
            t1 = std::min(t1, t);
        } else {
            t0 = std::max(t0, t);
        }
        if (t0 > t1) return false;
    }
    return true;
}

}  // namespace

double normalize_half_turn(double angle) {
    double a = std::fmod(angle, kPi);
    if (a < 0.0) a += kPi;
    if (a >= kPi) a = 0.0;
    return a;
}

Segment::Segment(Point a, Point b) : a_(a), b_(b) {
    if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(b.x) ||
        !std::isfinite(b.y)) {
        throw GeometryError("segment endpoint is not finite");
    }
    if (distance(a, b) < kGeoEps) throw GeometryError("degenerate segment");
}

double Segment::direction_angle() const { return half_turn_angle(b_ - a_); }

Barrier::Barrier(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw GeometryError("barrier has no segments");
}

double Barrier::total_length() const {
    double total = 0.0;
    for (const Segment& s : segments_) total += s.length();
    return total;
}

Barrier Barrier::without(std::size_t index) const {
    std::vector<Segment> rest;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        if (i != index) rest.push_back(segments_[i]);
    }
    return Barrier(std::move(rest));
}

Line Line::through(Point a, Point b) {
    if (opaque::distance(a, b) < kGeoEps) throw GeometryError("line through coincident points");
    return with_direction(half_turn_angle(b - a), a);
}

Line Line::with_direction(double theta, Point q) {
    Line line{normalize_half_turn(theta), 0.0};
    line.p = dot(line.normal(), q);
    return line;
}

double distance(const Line& line, const Segment& s) {
    const double da = line.signed_offset(s.a());
    const double db = line.signed_offset(s.b());
    if ((da <= 0.0 && db >= 0.0) || (da >= 0.0 && db <= 0.0)) return 0.0;
    return std::min(std::abs(da), std::abs(db));
}

std::vector<Point> convex_hull(std::span<const Point> points) {
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(),
              [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;

    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double hull_perimeter(std::span<const Point> points) {
    const std::vector<Point> hull = convex_hull(points);
    if (hull.size() < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        total += distance(hull[i], hull[(i + 1) % hull.size()]);
    }
    return total;
}

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) {
    for (const Point& p : vertices) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw GeometryError("polygon vertex is not finite");
        }
    }
    // Drop repeated vertices (including a closing copy of the first one).
    std::vector<Point> pts;
    for (const Point& p : vertices) {
        if (pts.empty() || distance(pts.back(), p) >= kGeoEps) pts.push_back(p);
    }
    while (pts.size() > 1 && distance(pts.front(), pts.back()) < kGeoEps) pts.pop_back();
    if (pts.size() < 3) throw GeometryError("polygon needs at least 3 vertices");

    double twice_area = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        twice_area += cross(pts[i], pts[(i + 1) % pts.size()]);
    }
    if (twice_area < 0.0) std::reverse(pts.begin(), pts.end());

    // Merge collinear vertices until stable.
    bool changed = true;
    while (changed && pts.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Point prev = pts[(i + pts.size() - 1) % pts.size()];
            const Point next = pts[(i + 1) % pts.size()];
            if (std::abs(orient(prev, pts[i], next)) <= kGeoEps * distance(prev, next)) {
                pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (pts.size() < 3) throw GeometryError("polygon is degenerate");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point prev = pts[(i + pts.size() - 1) % pts.size()];
        const Point next = pts[(i + 1) % pts.size()];
        if (orient(prev, pts[i], next) <= 0.0) throw GeometryError("polygon is not convex");
    }
    vertices_ = std::move(pts);
}

ConvexPolygon ConvexPolygon::hull(std::span<const Point> points) {
    return ConvexPolygon(convex_hull(points));
}

ConvexPolygon ConvexPolygon::rectangle(double x0, double y0, double x1, double y1) {
    return ConvexPolygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

double ConvexPolygon::perimeter() const {
    double total = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        total += distance(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
    }
    return total;
}

double ConvexPolygon::area() const {
    double twice = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        twice += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
    }
    return 0.5 * twice;
}

bool ConvexPolygon::contains(Point q, double eps) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Point a = vertices_[i];
        const Point b = vertices_[(i + 1) % vertices_.size()];
        if (orient(a, b, q) / distance(a, b) < -eps) return false;
    }
    return true;
}

Interval ConvexPolygon::offsets(double alpha) const {
    const Point n{-std::sin(alpha), std::cos(alpha)};
    Interval out{std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
    for (const Point& v : vertices_) {
        const double d = dot(n, v);
        out.lo = std::min(out.lo, d);
        out.hi = std::max(out.hi, d);
    }
    return out;
}

double ConvexPolygon::chord_length(const Line& line) const {
    const std::vector<HalfPlane> planes = edge_planes(vertices_);
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    if (!clip_range(line.foot(), line.direction(), planes, t0, t1)) return 0.0;
    return std::max(0.0, t1 - t0);
}

double width(const ConvexPolygon& poly, double alpha) { return poly.offsets(alpha).length(); }

Interval project_normal(const Segment& s, double alpha) {
    const Point n{-std::sin(alpha), std::cos(alpha)};
    const double da = dot(n, s.a());
    const double db = dot(n, s.b());
    return {std::min(da, db), std::max(da, db)};
}

std::optional<std::pair<double, double>> clip_parameters(const Segment& s,
                                                        const ConvexPolygon& poly) {
    const std::vector<HalfPlane> planes = edge_planes(poly.vertices());
    double t0 = 0.0;
    double t1 = 1.0;
    if (!clip_range(s.a(), s.b() - s.a(), planes, t0, t1)) return std::nullopt;
    if ((t1 - t0) * s.length() < kGeoEps) return std::nullopt;
    return std::make_pair(t0, t1);
}

std::optional<Segment> clip(const Segment& s, const ConvexPolygon& poly) {
    const auto range = clip_parameters(s, poly);
    if (!range) return std::nullopt;
    if (range->first == 0.0 && range->second == 1.0) return s;
    return Segment(s.at(range->first), s.at(range->second));
}

double length_inside(const Segment& s, std::span<const HalfPlane> planes) {
    double t0 = 0.0;
    double t1 = 1.0;
    if (!clip_range(s.a(), s.b() - s.a(), planes, t0, t1)) return 0.0;
    return std::max(0.0, t1 - t0) * s.length();
}

const char* to_string(AngleTag tag) {
    switch (tag) {
        case AngleTag::X: return "X";
        case AngleTag::Y: return "Y";
        case AngleTag::Z: return "Z";
    }
    return "?";
}

AngleClass classify(const Segment& s, double phi) {
    const double a = s.direction_angle();
    const double to_x = std::min(a, kPi - a);
    const double to_y = std::abs(a - kPi / 2);
    AngleClass out;
    out.alpha_s = std::min(to_x, to_y);
    out.beta_s = kPi / 4 - out.alpha_s;
    if (to_x <= phi) {
        out.tag = AngleTag::X;
    } else if (to_y <= phi) {
        out.tag = AngleTag::Y;
    } else {
        out.tag = AngleTag::Z;
    }
    return out;
}

}  // namespace opaque

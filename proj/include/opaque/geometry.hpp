#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace opaque {

/// Absolute tolerance used by every geometric predicate.
inline constexpr double kGeoEps = 1e-9;

inline constexpr double kPi = std::numbers::pi;

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double k, Point a) { return {k * a.x, k * a.y}; }
    friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

/// Orientation of c relative to the directed line a->b (positive = left).
inline double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

/// Reduces an angle into [0, pi).
double normalize_half_turn(double angle);

/// Closed interval of reals; `lo <= hi`.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
};

/// Closed line segment with distinct endpoints (|ab| >= kGeoEps).
class Segment {
public:
    Segment(Point a, Point b);

    Point a() const { return a_; }
    Point b() const { return b_; }
    double length() const { return distance(a_, b_); }
    Point midpoint() const { return 0.5 * (a_ + b_); }
    Point at(double t) const { return a_ + t * (b_ - a_); }
    /// Direction angle of the unoriented segment, in [0, pi).
    double direction_angle() const;

    friend bool operator==(const Segment&, const Segment&) = default;

private:
    Point a_;
    Point b_;
};

/// A non-empty, finite list of segments.
class Barrier {
public:
    explicit Barrier(std::vector<Segment> segments);

    std::span<const Segment> segments() const { return segments_; }
    std::size_t size() const { return segments_.size(); }
    const Segment& operator[](std::size_t i) const { return segments_[i]; }
    double total_length() const;

    /// Copy of this barrier with segment `index` removed. Throws if that
    /// would leave the barrier empty.
    Barrier without(std::size_t index) const;

    friend bool operator==(const Barrier&, const Barrier&) = default;

private:
    std::vector<Segment> segments_;
};

/// Unoriented line in normal form. `theta` in [0, pi) is the direction of
/// the line; the line is the set {q : dot(normal(), q) = p} where
/// normal() = (cos(theta + pi/2), sin(theta + pi/2)).
struct Line {
    double theta = 0.0;
    double p = 0.0;

    static Line through(Point a, Point b);
    /// Builds a line with direction `theta` (any real) through `q`.
    static Line with_direction(double theta, Point q);

    Point direction() const { return {std::cos(theta), std::sin(theta)}; }
    Point normal() const { return {-std::sin(theta), std::cos(theta)}; }
    double signed_offset(Point q) const { return dot(normal(), q) - p; }
    double distance(Point q) const { return std::abs(signed_offset(q)); }
    /// Closest point of the line to the origin.
    Point foot() const { return p * normal(); }
};

/// Distance from a line to a segment; zero when they meet.
double distance(const Line& line, const Segment& s);

/// Strictly convex polygon, vertices stored counter-clockwise.
class ConvexPolygon {
public:
    /// Accepts the vertices of a convex polygon in either orientation.
    /// Duplicate and collinear vertices are merged. Throws GeometryError on
    /// fewer than 3 distinct corners or a non-convex chain.
    explicit ConvexPolygon(std::vector<Point> vertices);

    /// Convex hull of an arbitrary point set (must span a 2D region).
    static ConvexPolygon hull(std::span<const Point> points);
    static ConvexPolygon rectangle(double x0, double y0, double x1, double y1);
    static ConvexPolygon unit_square() { return rectangle(0.0, 0.0, 1.0, 1.0); }

    std::span<const Point> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    double perimeter() const;
    double area() const;
    bool contains(Point q, double eps = kGeoEps) const;
    /// Offsets of the lines with direction `alpha` that meet the polygon.
    Interval offsets(double alpha) const;
    /// Length of the chord cut from the polygon by `line` (0 if disjoint).
    double chord_length(const Line& line) const;

private:
    std::vector<Point> vertices_;
};

/// Boundary length of the convex hull of an arbitrary point set. Collinear
/// sets give twice their extent, a single point gives 0.
double hull_perimeter(std::span<const Point> points);

/// Convex hull (counter-clockwise, no collinear vertices) of a point set.
std::vector<Point> convex_hull(std::span<const Point> points);

/// Width of `poly` as seen by lines of direction `alpha`.
double width(const ConvexPolygon& poly, double alpha);

/// Offsets of the direction-`alpha` lines that meet `s`.
Interval project_normal(const Segment& s, double alpha);

/// Parameter range [t0, t1] of `s` lying inside `poly`, if non-degenerate.
std::optional<std::pair<double, double>> clip_parameters(const Segment& s,
                                                        const ConvexPolygon& poly);

/// s ∩ poly, or nothing when the intersection is empty or a single point.
std::optional<Segment> clip(const Segment& s, const ConvexPolygon& poly);

/// Half-plane {q : dot(normal, q) <= offset}.
struct HalfPlane {
    Point normal;
    double offset = 0.0;
};

/// Length of s inside the intersection of `planes` (any convex region).
double length_inside(const Segment& s, std::span<const HalfPlane> planes);

enum class AngleTag { X, Y, Z };

const char* to_string(AngleTag tag);

struct AngleClass {
    AngleTag tag = AngleTag::Z;
    /// Smallest rotation bringing the segment to horizontal or vertical.
    double alpha_s = 0.0;
    /// pi/4 - alpha_s: smallest angle to a diagonal direction.
    double beta_s = 0.0;
};

/// Near-horizontal (X) / near-vertical (Y) / other (Z) classification with
/// threshold `phi` in (0, pi/4).
AngleClass classify(const Segment& s, double phi);

}  // namespace opaque

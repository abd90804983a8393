#include "opaque/audit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace opaque {

std::vector<HalfPlane> BarrierRegions::slanted_strip(bool mirrored) const {
    const double sy = mirrored ? -1.0 : 1.0;
    const double y0 = mirrored ? 1.0 : 0.0;
    // Normal of the line through (1 - w1, y0) and (1, 1/2).
    Point n{0.5, -sy * w1};
    n = (1.0 / norm(n)) * n;
    const double inner = dot(n, Point{1 - w1, y0});
    const double outer = dot(n, Point{1, y0});
    return {{n, outer}, {-1.0 * n, -inner}};
}

const char* to_string(Region r) {
    static const char* names[] = {"A1", "A2", "A3", "A4", "B1", "B2", "B3",
                                  "B4", "C1", "C2", "C3", "C4", "C0"};
    return names[static_cast<std::size_t>(r)];
}

std::string variable_name(std::size_t index) {
    if (index >= kVariableCount) throw std::out_of_range("variable index");
    return std::string(to_string(static_cast<AngleTag>(index / kRegionCount))) +
           to_string(static_cast<Region>(index % kRegionCount));
}

namespace {

// Corner i of U, numbered counter-clockwise from the origin.
Point corner_map(Point p, int corner) {
    switch (corner) {
        case 1: return p;
        case 2: return {1 - p.x, p.y};
        case 3: return {1 - p.x, 1 - p.y};
        default: return {p.x, 1 - p.y};
    }
}

ConvexPolygon at_corner(std::vector<Point> pts, int corner) {
    for (Point& p : pts) p = corner_map(p, corner);
    return ConvexPolygon(std::move(pts));
}

}  // namespace

RegionPartition13 build_partition(double w) {
    if (!(w > 0.0 && w < 0.5)) throw std::invalid_argument("w must lie in (0, 1/2)");
    const double c = w / (1 + 2 * w);
    const Point p{c, c};
    std::vector<ConvexPolygon> polys;
    for (int i = 1; i <= 4; ++i) polys.push_back(at_corner({{w, 0}, {0.5, 0}, p}, i));
    for (int i = 1; i <= 4; ++i) polys.push_back(at_corner({{0, w}, p, {0, 0.5}}, i));
    for (int i = 1; i <= 4; ++i) polys.push_back(at_corner({{0, 0}, {w, 0}, p, {0, w}}, i));
    polys.push_back(ConvexPolygon({{0.5, 0}, corner_map(p, 2), {1, 0.5}, corner_map(p, 3),
                                   {0.5, 1}, corner_map(p, 4), {0, 0.5}, p}));
    return RegionPartition13{
        w,
        std::atan(2 * w),
        1.0 / std::sqrt(4 + 1 / (w * w)),
        {polys[0], polys[1], polys[2], polys[3], polys[4], polys[5], polys[6], polys[7],
         polys[8], polys[9], polys[10], polys[11], polys[12]}};
}

double DecompositionVector::sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

double DecompositionVector::class_total(AngleTag tag) const {
    double total = 0.0;
    for (std::size_t r = 0; r < kRegionCount; ++r) total += at(tag, static_cast<Region>(r));
    return total;
}

DecompositionVector decompose(const Barrier& barrier, const RegionPartition13& partition,
                              double phi, DecomposeMode mode) {
    DecompositionVector out;
    for (const Segment& s : barrier.segments()) {
        const AngleTag tag = classify(s, phi).tag;
        std::vector<double> cuts{0.0, 1.0};
        for (const ConvexPolygon& r : partition.regions) {
            if (auto range = clip_parameters(s, r)) {
                cuts.push_back(range->first);
                cuts.push_back(range->second);
            }
        }
        if (auto range = clip_parameters(s, ConvexPolygon::unit_square())) {
            cuts.push_back(range->first);
            cuts.push_back(range->second);
        }
        std::sort(cuts.begin(), cuts.end());
        const double len = s.length();
        for (std::size_t k = 1; k < cuts.size(); ++k) {
            const double piece = (cuts[k] - cuts[k - 1]) * len;
            if (piece <= 0.0) continue;
            const Point mid = s.at(0.5 * (cuts[k] + cuts[k - 1]));
            std::size_t r = 0;
            while (r < kRegionCount && !partition.regions[r].contains(mid)) ++r;
            if (r == kRegionCount) {
                out.outside += piece;
            } else {
                out.at(tag, static_cast<Region>(r)) += piece;
            }
        }
    }
    if (mode == DecomposeMode::strict && out.outside > kGeoEps) {
        throw GeometryError("barrier is not contained in the unit square");
    }
    return out;
}

const char* to_string(Symmetry g) {
    switch (g) {
        case Symmetry::identity: return "identity";
        case Symmetry::rot90: return "rot90";
        case Symmetry::rot180: return "rot180";
        case Symmetry::rot270: return "rot270";
        case Symmetry::flip_x: return "flip-x";
        case Symmetry::flip_y: return "flip-y";
        case Symmetry::flip_d1: return "flip-d1";
        case Symmetry::flip_d2: return "flip-d2";
    }
    return "?";
}

std::optional<Symmetry> parse_symmetry(std::string_view name) {
    for (Symmetry g : kSymmetries) {
        if (name == to_string(g)) return g;
    }
    return std::nullopt;
}

Point apply_symmetry(Point p, Symmetry g) {
    switch (g) {
        case Symmetry::identity: return p;
        case Symmetry::rot90: return {1 - p.y, p.x};
        case Symmetry::rot180: return {1 - p.x, 1 - p.y};
        case Symmetry::rot270: return {p.y, 1 - p.x};
        case Symmetry::flip_x: return {1 - p.x, p.y};
        case Symmetry::flip_y: return {p.x, 1 - p.y};
        case Symmetry::flip_d1: return {p.y, p.x};
        case Symmetry::flip_d2: return {1 - p.y, 1 - p.x};
    }
    return p;
}

Barrier apply_symmetry(const Barrier& barrier, Symmetry g) {
    std::vector<Segment> out;
    out.reserve(barrier.size());
    for (const Segment& s : barrier.segments()) {
        out.emplace_back(apply_symmetry(s.a(), g), apply_symmetry(s.b(), g));
    }
    return Barrier(std::move(out));
}

namespace {

bool swaps_axes(Symmetry g) {
    return g == Symmetry::rot90 || g == Symmetry::rot270 || g == Symmetry::flip_d1 ||
           g == Symmetry::flip_d2;
}

// Corner (1..4) that corner i is sent to.
int image_corner(int i, Symmetry g) {
    static const Point corners[] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const Point q = apply_symmetry(corners[i - 1], g);
    for (int j = 0; j < 4; ++j) {
        if (q == corners[j]) return j + 1;
    }
    return i;
}

Region image_region(Region r, Symmetry g) {
    const auto idx = static_cast<int>(r);
    if (r == Region::C0) return r;
    const int family = idx / 4;  // 0 = A, 1 = B, 2 = C
    const int corner = image_corner(idx % 4 + 1, g);
    int new_family = family;
    if (swaps_axes(g) && family < 2) new_family = 1 - family;
    return static_cast<Region>(new_family * 4 + corner - 1);
}

AngleTag image_tag(AngleTag t, Symmetry g) {
    if (!swaps_axes(g) || t == AngleTag::Z) return t;
    return t == AngleTag::X ? AngleTag::Y : AngleTag::X;
}

}  // namespace

DecompositionVector permute(const DecompositionVector& v, Symmetry g) {
    DecompositionVector out;
    out.outside = v.outside;
    for (AngleTag t : {AngleTag::X, AngleTag::Y, AngleTag::Z}) {
        for (std::size_t r = 0; r < kRegionCount; ++r) {
            const auto reg = static_cast<Region>(r);
            out.at(image_tag(t, g), image_region(reg, g)) = v.at(t, reg);
        }
    }
    return out;
}

double x_balance(const DecompositionVector& v) {
    using enum Region;
    return v.at(AngleTag::X, A1) + v.at(AngleTag::X, A2) - v.at(AngleTag::X, A3) -
           v.at(AngleTag::X, A4);
}

double y_balance(const DecompositionVector& v) {
    using enum Region;
    return v.at(AngleTag::Y, B1) + v.at(AngleTag::Y, B4) - v.at(AngleTag::Y, B2) -
           v.at(AngleTag::Y, B3);
}

Symmetry normalizing_symmetry(const DecompositionVector& v) {
    for (Symmetry g : {Symmetry::identity, Symmetry::flip_x, Symmetry::flip_y, Symmetry::rot180}) {
        const DecompositionVector p = permute(v, g);
        if (x_balance(p) >= 0.0 && y_balance(p) >= 0.0) return g;
    }
    return Symmetry::identity;  // unreachable: the four choices cover every sign pattern
}

bool LemmaReport::all_satisfied() const {
    return std::all_of(rows.begin(), rows.end(), [](const LemmaRow& r) { return r.satisfied; });
}

const LemmaRow* LemmaReport::find(std::string_view name) const {
    for (const LemmaRow& r : rows) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

namespace {

double inside(const Segment& s, const ConvexPolygon& poly) {
    const auto range = clip_parameters(s, poly);
    return range ? (range->second - range->first) * s.length() : 0.0;
}

double inside(const Segment& s, std::initializer_list<const std::vector<HalfPlane>*> regions) {
    std::vector<HalfPlane> all;
    for (const auto* r : regions) all.insert(all.end(), r->begin(), r->end());
    return length_inside(s, all);
}

std::vector<HalfPlane> as_planes(const ConvexPolygon& poly) {
    std::vector<HalfPlane> out;
    const auto v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point a = v[i], b = v[(i + 1) % v.size()];
        const Point n{b.y - a.y, a.x - b.x};  // outward for a CCW polygon
        out.push_back({n, dot(n, a)});
    }
    return out;
}

std::vector<HalfPlane> vertical_strip(Interval I) {
    return {{{-1, 0}, -I.lo}, {{1, 0}, I.hi}};
}

std::vector<HalfPlane> horizontal_strip(Interval J) {
    return {{{0, -1}, -J.lo}, {{0, 1}, J.hi}};
}

double overlap_with_unit(Interval I) {
    return std::max(0.0, std::min(I.hi, 1.0) - std::max(I.lo, 0.0));
}

}  // namespace

AdvanceStats band_stats(const Barrier& barrier, const BarrierRegions& reg) {
    AdvanceStats st;
    for (const Segment& s : barrier.segments()) {
        switch (classify(s, reg.phi).tag) {
            case AngleTag::X:
                st.x_total += s.length();
                st.x_low += inside(s, reg.U_low);
                st.x_high += inside(s, reg.U_high);
                break;
            case AngleTag::Y:
                st.y_total += s.length();
                st.y_left += inside(s, reg.U_left);
                st.y_right += inside(s, reg.U_right);
                break;
            case AngleTag::Z: st.z_total += s.length(); break;
        }
    }
    return st;
}

LemmaReport evaluate_length_bounds(const Barrier& barrier, const BarrierRegions& reg,
                                   std::optional<Interval> I, std::optional<Interval> J) {
    const double w = reg.w1 + reg.w2 / 10;
    const Interval i_strip = I.value_or(Interval{1 - w, 1});
    const double half = reg.w2 / (2 * reg.w1);
    const Interval j_strip = J.value_or(Interval{0.5 - half, 0.5 + half});
    const double sphi = std::sin(reg.phi);

    const std::vector<HalfPlane> u2 = as_planes(reg.U2);
    const std::vector<HalfPlane> i_planes = vertical_strip(i_strip);
    const std::vector<HalfPlane> j_planes = horizontal_strip(j_strip);

    double total = 0, z = 0, x = 0, y = 0, x_out_v = 0, y_out_h = 0, x_in_i = 0, y_in_j = 0;
    double out_q2 = 0, out_u2 = 0;
    double x_plus = 0, x_minus = 0, y_plus = 0, y_minus = 0, y_pm = 0;
    for (const Segment& s : barrier.segments()) {
        const double len = s.length();
        total += len;
        out_q2 += len - inside(s, reg.Q2);
        out_u2 += len - inside(s, reg.U2);
        switch (classify(s, reg.phi).tag) {
            case AngleTag::Z: z += len; break;
            case AngleTag::X:
                x += len;
                x_out_v += len - inside(s, {&reg.V});
                x_in_i += inside(s, {&i_planes});
                x_plus += inside(s, {&reg.V, &u2, &reg.pi_plus});
                x_minus += inside(s, {&reg.V, &u2, &reg.pi_minus});
                break;
            case AngleTag::Y: {
                y += len;
                y_out_h += len - inside(s, {&reg.H});
                y_in_j += inside(s, {&j_planes});
                const double both = inside(s, {&reg.H, &u2, &reg.pi_plus, &reg.pi_minus});
                y_plus += inside(s, {&reg.H, &u2, &reg.pi_plus}) - both;
                y_minus += inside(s, {&reg.H, &u2, &reg.pi_minus}) - both;
                y_pm += both;
                break;
            }
        }
    }

    LemmaReport rep;
    rep.total_length = total;
    rep.hypotheses_applicable = total >= 2.0 && total <= 2.0 + reg.delta;
    auto upper = [&](std::string name, double lhs, double rhs) {
        rep.rows.push_back({std::move(name), lhs, rhs, lhs <= rhs});
    };
    auto lower = [&](std::string name, double lhs, double rhs) {
        rep.rows.push_back({std::move(name), lhs, rhs, lhs >= rhs});
    };
    upper("z_total", z, 2 * sphi);
    lower("x_total_lower", x, 1 - 3.5 * sphi);
    upper("x_total_upper", x, 1 + 1.5 * sphi);
    lower("y_total_lower", y, 1 - 3.5 * sphi);
    upper("y_total_upper", y, 1 + 1.5 * sphi);
    upper("x_outside_V", x_out_v, 4.5 * sphi);
    upper("y_outside_H", y_out_h, 4.5 * sphi);
    upper("x_in_I", x_in_i, overlap_with_unit(i_strip) + 5 * sphi);
    upper("y_in_J", y_in_j, overlap_with_unit(j_strip) + 5 * sphi);
    upper("outside_Q2", out_q2, 4 * reg.delta);
    upper("outside_U2", out_u2, (5e5 + 2) * reg.delta);
    const AdvanceStats st = band_stats(barrier, reg);
    lower("x_low_band", st.x_low, 0.45);
    lower("x_high_band", st.x_high, 0.45);
    lower("y_left_band", st.y_left, 0.45);
    lower("y_right_band", st.y_right, 0.45);

    rep.diagnostics = {{"x_plus", x_plus}, {"x_minus", x_minus}, {"x_star", x_out_v},
                       {"y_plus", y_plus}, {"y_minus", y_minus}, {"y_pm", y_pm},
                       {"y_star", y_out_h}};
    return rep;
}

}  // namespace opaque

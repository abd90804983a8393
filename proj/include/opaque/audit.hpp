#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opaque/advance.hpp"
#include "opaque/geometry.hpp"

namespace opaque {

// Fixed regions around U used by the length-2 argument.
struct BarrierRegions {
    double delta = 1e-12;
    double phi = std::asin(1e-4);
    double w1 = 1.0 / 20.0;
    double w2 = 1.0 / 1000.0;

    ConvexPolygon U = ConvexPolygon::unit_square();
    ConvexPolygon U1 = ConvexPolygon::rectangle(w1, w1, 1 - w1, 1 - w1);
    ConvexPolygon U2 = ConvexPolygon::rectangle(-w2, -w2, 1 + w2, 1 + w2);
    ConvexPolygon U3 = ConvexPolygon::rectangle(-0.5, -0.5, 1.5, 1.5);
    ConvexPolygon Q1 = ConvexPolygon({{0.5, 0}, {1, 0.5}, {0.5, 1}, {0, 0.5}});
    ConvexPolygon Q2 = ConvexPolygon({{0.5, -0.5}, {1.5, 0.5}, {0.5, 1.5}, {-0.5, 0.5}});
    ConvexPolygon U_left = ConvexPolygon::rectangle(-w2, 0, w1, 1);
    ConvexPolygon U_right = ConvexPolygon::rectangle(1 - w1, 0, 1 + w2, 1);
    ConvexPolygon U_low = ConvexPolygon::rectangle(0, -w2, 1, w1);
    ConvexPolygon U_high = ConvexPolygon::rectangle(0, 1 - w1, 1, 1 + w2);
    std::vector<HalfPlane> V = {{{-1, 0}, 0}, {{1, 0}, 1}};
    std::vector<HalfPlane> H = {{{0, -1}, 0}, {{0, 1}, 1}};
    // Strip between the line through (1 - w1, 0), (1, 1/2) and its parallel
    // through (1, 0); pi_minus is its mirror image in y = 1/2.
    std::vector<HalfPlane> pi_plus = slanted_strip(false);
    std::vector<HalfPlane> pi_minus = slanted_strip(true);

private:
    std::vector<HalfPlane> slanted_strip(bool mirrored) const;
};

enum class Region { A1, A2, A3, A4, B1, B2, B3, B4, C1, C2, C3, C4, C0 };

inline constexpr std::size_t kRegionCount = 13;
inline constexpr std::size_t kVariableCount = 39;

const char* to_string(Region r);

struct RegionPartition13 {
    double w = 0.0;
    double psi = 0.0;  // atan(2w), angle of the cut hypotenuses
    double h = 0.0;    // height of a cut triangle to its hypotenuse
    std::array<ConvexPolygon, kRegionCount> regions;

    const ConvexPolygon& operator[](Region r) const {
        return regions[static_cast<std::size_t>(r)];
    }
};

RegionPartition13 build_partition(double w);

// Lengths per (class, region); index = class * 13 + region.
struct DecompositionVector {
    std::array<double, kVariableCount> values{};
    double outside = 0.0;  // length outside U (lenient mode only)

    static std::size_t index(AngleTag tag, Region r) {
        return static_cast<std::size_t>(tag) * kRegionCount + static_cast<std::size_t>(r);
    }
    double& at(AngleTag tag, Region r) { return values[index(tag, r)]; }
    double at(AngleTag tag, Region r) const { return values[index(tag, r)]; }
    double sum() const;
    double class_total(AngleTag tag) const;
};

std::string variable_name(std::size_t index);

enum class DecomposeMode { strict, lenient };

DecompositionVector decompose(const Barrier& barrier, const RegionPartition13& partition,
                              double phi, DecomposeMode mode = DecomposeMode::strict);

// The eight symmetries of U.
enum class Symmetry { identity, rot90, rot180, rot270, flip_x, flip_y, flip_d1, flip_d2 };

inline constexpr std::array<Symmetry, 8> kSymmetries = {
    Symmetry::identity, Symmetry::rot90,  Symmetry::rot180,  Symmetry::rot270,
    Symmetry::flip_x,   Symmetry::flip_y, Symmetry::flip_d1, Symmetry::flip_d2};

const char* to_string(Symmetry g);
std::optional<Symmetry> parse_symmetry(std::string_view name);

Point apply_symmetry(Point p, Symmetry g);
Barrier apply_symmetry(const Barrier& barrier, Symmetry g);
// Where decompose() sends each entry when the barrier is transformed by g.
DecompositionVector permute(const DecompositionVector& v, Symmetry g);

// XA1 + XA2 - XA3 - XA4 and YB1 + YB4 - YB2 - YB3.
double x_balance(const DecompositionVector& v);
double y_balance(const DecompositionVector& v);

// First of {identity, flip_x, flip_y, rot180} making both balances
// non-negative.
Symmetry normalizing_symmetry(const DecompositionVector& v);

struct LemmaRow {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

struct LemmaReport {
    double total_length = 0.0;
    bool hypotheses_applicable = false;  // 2 <= L <= 2 + delta
    std::vector<LemmaRow> rows;
    std::vector<std::pair<std::string, double>> diagnostics;

    bool all_satisfied() const;
    const LemmaRow* find(std::string_view name) const;
};

LemmaReport evaluate_length_bounds(const Barrier& barrier, const BarrierRegions& regions = {},
                                   std::optional<Interval> I = std::nullopt,
                                   std::optional<Interval> J = std::nullopt);

AdvanceStats band_stats(const Barrier& barrier, const BarrierRegions& regions = {});

}  // namespace opaque

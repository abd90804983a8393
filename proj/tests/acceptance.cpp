// Prints one PASS/FAIL line per acceptance criterion; exit status is the
// number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "opaque/advance.hpp"
#include "opaque/audit.hpp"
#include "opaque/constructions.hpp"
#include "opaque/line_measure.hpp"
#include "opaque/lp_bound.hpp"
#include "opaque/opacity.hpp"

using namespace opaque;

namespace {

const ConvexPolygon kSquare = ConvexPolygon::unit_square();

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const LpSolution& reference_solution() {
    static const LpSolution sol = solve_exact(build_interior_lp(LpParameters::reference(), 64));
    return sol;
}

void lp_reproduction(Check& v) {
    const auto t0 = std::chrono::steady_clock::now();
    const LinearProgram lp = build_interior_lp(LpParameters::reference(), 64);
    const LpSolution& sol = reference_solution();
    const double secs = seconds_since(t0);
    const Rational lo = Rational(1) * 2 + parse_rational("1e-5");
    const Rational hi = parse_rational("2.0000113") + parse_rational("5e-7");
    v.require(sol.optimum > lo && sol.optimum < hi, "optimum outside the window");
    Rational bound;
    try {
        bound = check_dual_certificate(lp, sol.dual);
    } catch (const CertificateError& e) {
        v.require(false, std::string("certificate rejected: ") + e.what());
    }
    v.require(bound == sol.optimum, "certificate bound differs from the optimum");
    v.require(secs < 60, "runtime");
    char buf[160];
    std::snprintf(buf, sizeof buf, "optimum %.17g, certificate bound %.17g, %zu pivots, %.2f s",
                  nearest_double(sol.optimum), nearest_double(bound), sol.pivots, secs);
    v.detail << buf;
}

void primal_regression_check(Check& v) {
    const LpSolution& sol = reference_solution();
    const RegressionReport rep = primal_regression(sol.primal);
    const double gap = std::abs(nearest_double(sol.optimum) - kReferenceOptimum);
    const bool coords = rep.max_deviation <= 1e-4;
    const bool objective = gap <= 5e-7;
    v.require(coords || objective, "neither coordinates nor objective match");
    char buf[256];
    std::snprintf(buf, sizeof buf, "max coordinate deviation %.3g at %s, objective gap %.3g", rep.max_deviation,
                  variable_name(rep.worst).c_str(), gap);
    v.detail << buf;
    if (!coords && objective) {
        v.detail << "; note: alternate optimum, the reference table and the solver's vertex share the objective";
    }
}

void known_barriers(Check& v) {
    const WitnessConfig cfg{1e-4, 1e-6};
    const double expected[] = {3.0, 2 * std::sqrt(2.0), 1 + std::sqrt(3.0), std::sqrt(2.0) + std::sqrt(6.0) / 2};
    int i = 0;
    std::size_t deletions = 0;
    for (BarrierKind k : kOpaqueKinds) {
        const std::string name(kind_name(k));
        const Barrier b = make_barrier(k).barrier;
        v.require(std::abs(b.total_length() - expected[i++]) <= 1e-12, name + " length");
        v.require(find_witness(b, kSquare, cfg).verdict == Verdict::opaque, name + " has a witness");
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Barrier cut = b.without(j);
            const WitnessSearch s = find_witness(cut, kSquare, cfg);
            v.require(s.verdict == Verdict::witness && verify_witness(s.witness->line, cut, kSquare, 1e-6),
                      name + " minus segment " + std::to_string(j) + " has no verified witness");
            ++deletions;
        }
    }
    v.detail << "4 barriers opaque, " << deletions << " single deletions all leak";
}

void imperfect_structure(Check& v) {
    const Barrier b = imperfect_four_direction().barrier;
    v.require(b.total_length() == 2.0, "length is not exactly 2");
    const MainDirectionSlack s = main_direction_slack(b);
    for (double x : {s.diagonal1, s.diagonal2, s.x, s.y}) v.require(std::abs(x) <= 1e-12, "non-zero slack");
    const WitnessSearch w = find_witness(b, kSquare);
    v.require(w.verdict == Verdict::witness && verify_witness(w.witness->line, b, kSquare, 1e-6),
              "find_witness");
    const AdvanceResult a = run_advance(b);
    v.require(a.outcome == AdvanceOutcome::success && verify_witness(a.witness->line, b, kSquare, 1e-6),
              "run_advance");
    char buf[200];
    std::snprintf(buf, sizeof buf, "length %.17g, slacks %.1e %.1e %.1e %.1e, advance events %zu",
                  b.total_length(), s.diagonal1, s.diagonal2, s.x, s.y, a.state.events.size());
    v.detail << buf;
}

void constraint_soundness(Check& v) {
    const double phi = 1.5589 * kPi / 180;
    const DoubleLp lp = build_interior_lp_double(0.1793, phi);
    const RegionPartition13 p = build_partition(0.1793);
    double worst = 1e300;
    for (BarrierKind k : kOpaqueKinds) {
        const std::string name(kind_name(k));
        const Barrier b = make_barrier(k).barrier;
        const DecompositionVector d = decompose(b, p, phi);
        const std::vector<double> raw = row_slacks(lp, d);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (interior_rows()[i].symmetry_normalization) continue;
            v.require(raw[i] >= -1e-9, name + " violates " + interior_rows()[i].name);
            worst = std::min(worst, raw[i]);
        }
        const DecompositionVector n = decompose(apply_symmetry(b, normalizing_symmetry(d)), p, phi);
        const std::vector<double> normed = row_slacks(lp, n);
        for (std::size_t i = 0; i < normed.size(); ++i) {
            v.require(normed[i] >= -1e-9, name + " (normalized) violates " + interior_rows()[i].name);
            worst = std::min(worst, normed[i]);
        }
    }
    v.detail << "smallest slack " << worst;
}

ConvexPolygon random_polygon(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> c(-3, 3), r(0.2, 1.5);
    while (true) {
        const double cx = c(rng), cy = c(rng), rad = r(rng);
        std::vector<Point> pts;
        for (int i = 0; i < 6; ++i) pts.push_back({cx + rad * c(rng) / 3, cy + rad * c(rng) / 3});
        const std::vector<Point> hull = convex_hull(pts);
        if (hull.size() >= 3) return ConvexPolygon(hull);
    }
}

Segment random_disjoint_segment(std::mt19937_64& rng, const ConvexPolygon& body) {
    std::uniform_real_distribution<double> c(-3, 3);
    while (true) {
        const Segment s({c(rng), c(rng)}, {c(rng), c(rng)});
        if (s.length() > 1e-3 && bodies_disjoint(s, body)) return s;
    }
}

void sylvester(Check& v) {
    v.require(line_measure_single(kSquare) == 4.0, "measure of U is not 4");

    std::mt19937_64 rng(6);
    double worst_z = 0;
    for (int i = 0; i < 20; ++i) {
        const ConvexPolygon body = random_polygon(rng);
        const Segment s = random_disjoint_segment(rng, body);
        const double exact = meeting_measure(s, body).measure;
        const McEstimate mc = mc_meeting_measure(s, body, 1000000, 1000 + i);
        const double z = std::abs(mc.estimate - exact) / mc.standard_error;
        worst_z = std::max(worst_z, z);
        v.require(z < 3, "Monte-Carlo pair " + std::to_string(i));
    }

    double worst_ratio = 0;
    for (int i = 0; i < 1000; ++i) {
        const ConvexPolygon body = random_polygon(rng);
        const Segment s = random_disjoint_segment(rng, body);
        const double m = meeting_measure(s, body).measure;
        const ConeBound cb = cone_angle_bound(s, body);
        v.require(m <= cb.bound + 1e-12, "cone bound pair " + std::to_string(i));
        worst_ratio = std::max(worst_ratio, m / cb.bound);
    }

    const double w2 = 1e-3;
    const ConeBound side = cone_angle_bound(Segment({-w2, -w2}, {1 + w2, -w2}), kSquare);
    const double constant = 2 * std::sin(side.theta_max / 2);
    const double expected = 1 / std::sqrt(0.25 + 1e-6);
    v.require(std::abs(constant - expected) <= 1e-10, "midpoint constant");

    char buf[200];
    std::snprintf(buf, sizeof buf, "worst Monte-Carlo z %.2f, worst measure/bound %.4f, constant %.12f",
                  worst_z, worst_ratio, constant);
    v.detail << buf;
}

void advance_budget_check(Check& v) {
    const double phi = std::asin(1e-4);
    const AdvanceBudget b = advance_budget(extremal_stats(phi), 1.0 / 20, phi);
    v.require(b.tan_beta >= 2.635, "tan beta");
    v.require(b.x3 <= 0.76, "x3");
    v.require(b.total_advance <= 0.8997, "total advance");
    char buf[160];
    std::snprintf(buf, sizeof buf, "tan beta %.6f, x3 %.6f, total %.6f", b.tan_beta, b.x3, b.total_advance);
    v.detail << buf;
}

Barrier random_barrier(std::mt19937_64& rng, double lo, double hi, int max_segments) {
    std::uniform_real_distribution<double> c(lo, hi);
    std::uniform_int_distribution<int> n(1, max_segments);
    std::vector<Segment> segs;
    const int count = n(rng);
    while (static_cast<int>(segs.size()) < count) {
        const Point a{c(rng), c(rng)}, b{c(rng), c(rng)};
        if (distance(a, b) > 1e-3) segs.emplace_back(a, b);
    }
    return Barrier(std::move(segs));
}

bool monotone(const SweepState& st, double start, double limit) {
    double low = start, high = start;
    for (const SweepEvent& e : st.events) {
        if (e.displacement < 0 || e.low_x < low || e.high_x < high) return false;
        low = e.low_x;
        high = e.high_x;
    }
    return st.anchor_low.x == low && st.anchor_high.x == high && low <= limit && high <= limit;
}

void property_suites(Check& v) {
    constexpr int kBarriers = 10000;
    const double phi = 1.5589 * kPi / 180;
    const RegionPartition13 p = build_partition(0.1793);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> angle(0, kPi);
    std::size_t witnesses = 0, advance_successes = 0, disagreements = 0;

    for (int k = 0; k < kBarriers; ++k) {
        const Barrier b = random_barrier(rng, 0, 1, 20);
        const std::string tag = "barrier " + std::to_string(k);

        const double theta = angle(rng);
        const CoverageReport cov = coverage_gaps(b, theta, kSquare);
        v.require(std::abs(cov.covered_length + cov.gap_length() - width(kSquare, theta)) < 1e-9,
                  tag + " coverage identity");

        const WitnessSearch s = find_witness(b, kSquare);
        if (s.verdict == Verdict::witness) {
            ++witnesses;
            v.require(verify_witness(s.witness->line, b, kSquare, 1e-6), tag + " witness does not verify");
        }

        const DecompositionVector d = decompose(b, p, phi);
        v.require(std::abs(d.sum() - b.total_length()) < 1e-9, tag + " decomposition sum");
        for (Symmetry g : kSymmetries) {
            const DecompositionVector moved = decompose(apply_symmetry(b, g), p, phi);
            const DecompositionVector predicted = permute(d, g);
            for (std::size_t i = 0; i < kVariableCount; ++i) {
                v.require(std::abs(moved.values[i] - predicted.values[i]) < 1e-9,
                          tag + " equivariance under " + to_string(g));
            }
        }

        const AdvanceResult a = run_advance(b);
        v.require(monotone(a.state, 1.0 / 20, 1 - 1.0 / 20), tag + " anchor monotonicity");
        if (a.outcome == AdvanceOutcome::success) {
            ++advance_successes;
            v.require(verify_witness(a.witness->line, b, kSquare, 1e-6), tag + " advance witness");
            disagreements += s.verdict == Verdict::opaque;
        }
    }

    Rational prev = 0;
    for (unsigned bits : {32u, 48u, 64u, 96u, 128u}) {
        const Rational opt = solve_exact(build_interior_lp(LpParameters::reference(), bits)).optimum;
        v.require(opt >= prev, "LP optimum decreased at " + std::to_string(bits) + " bits");
        prev = opt;
    }

    v.detail << kBarriers << " barriers, " << witnesses << " witnesses and " << advance_successes
             << " advance successes verified, " << disagreements << " opaque verdicts contradicted by advance";
}

// Not a criterion: random families of length at most 2 + 1e-12 in U3 that
// survive both searches.
void logged_search() {
    std::mt19937_64 rng(2024);
    int tried = 0, survivors = 0;
    while (tried < 2000) {
        Barrier b = random_barrier(rng, -0.5, 1.5, 8);
        const double len = b.total_length();
        if (len > 2 + 1e-12) {
            // Shrink about the centroid of the endpoints to length 2.
            const double k = 2 / len;
            std::vector<Segment> segs;
            for (const Segment& s : b.segments()) {
                const Point c{0.5, 0.5};
                segs.emplace_back(c + k * (s.a() - c), c + k * (s.b() - c));
            }
            b = Barrier(std::move(segs));
        }
        ++tried;
        const bool found = find_witness(b, kSquare, {1e-3, 1e-6}).verdict == Verdict::witness;
        if (!found && run_advance(b).outcome != AdvanceOutcome::success) ++survivors;
    }
    std::printf("INFO search: %d random families of length <= 2 in U3, %d survived both searches\n", tried,
                survivors);
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void(Check&)> run;
    };
    const Criterion criteria[] = {
        {"LP bound reproduction", lp_reproduction},
        {"primal regression", primal_regression_check},
        {"known-barrier suite", known_barriers},
        {"imperfect-structure behavior", imperfect_structure},
        {"constraint soundness", constraint_soundness},
        {"Sylvester suite", sylvester},
        {"advance-budget formulas", advance_budget_check},
        {"property suites", property_suites},
    };
    int failures = 0;
    int index = 1;
    for (const Criterion& c : criteria) {
        Check v;
        try {
            c.run(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        std::printf("%s %d %s: %s\n", v.ok ? "PASS" : "FAIL", index++, c.name, v.detail.str().c_str());
        std::fflush(stdout);
        failures += !v.ok;
    }
    logged_search();
    return failures;
}

#include "opaque/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "opaque/advance.hpp"
#include "opaque/audit.hpp"
#include "opaque/constructions.hpp"
#include "opaque/line_measure.hpp"
#include "opaque/lp_bound.hpp"

namespace opaque {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct Position {
    std::size_t line = 1, column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
    Position pos;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    }
    return pos;
}

// Byte offset of element `k` of the top-level "segments" array, found with a
// small bracket scanner.
std::optional<std::size_t> segment_offset(std::string_view text, std::size_t k) {
    int depth = 0;
    bool after_key = false;
    int array_depth = -1;
    std::size_t index = 0;
    bool expect_element = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') continue;
        if (expect_element && c != ']') {
            if (index == k) return i;
            expect_element = false;
        }
        if (c == '"') {
            const std::size_t start = i;
            for (++i; i < text.size() && text[i] != '"'; ++i) {
                if (text[i] == '\\') ++i;
            }
            if (depth == 1 && text.substr(start, i - start + 1) == "\"segments\"") after_key = true;
            continue;
        }
        if (c == '[' || c == '{') {
            ++depth;
            if (after_key && c == '[' && depth == 2) {
                array_depth = depth;
                expect_element = true;
            }
            after_key = false;
        } else if (c == ']' || c == '}') {
            if (depth == array_depth) return std::nullopt;
            --depth;
        } else if (c == ',') {
            after_key = false;
            if (depth == array_depth) {
                ++index;
                expect_element = true;
            }
        }
    }
    return std::nullopt;
}

// nlohmann messages carry their own position prefix.
std::string json_reason(const json::parse_error& e) {
    const std::string what = e.what();
    const auto col = what.find("column ");
    const auto colon = col == std::string::npos ? std::string::npos : what.find(": ", col);
    return colon == std::string::npos ? what : what.substr(colon + 2);
}

[[noreturn]] void fail_at(std::string_view text, std::optional<std::size_t> offset, const std::string& what) {
    const Position pos = position_of(text, offset.value_or(0));
    throw ParseError(what, pos.line, pos.column);
}

double coordinate(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return nearest_double(parse_rational(v.get<std::string>()));
    throw std::invalid_argument("coordinate must be a number or a string like \"1/3\"");
}

Point point_of(const json& v) {
    if (!v.is_array() || v.size() != 2) throw std::invalid_argument("point must be [x, y]");
    return {coordinate(v[0]), coordinate(v[1])};
}

std::string read_all(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") return read_all(in);
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open " + path);
    return read_all(f);
}

ordered_json point_json(Point p) { return ordered_json::array({p.x, p.y}); }

ordered_json line_json(const Line& line) {
    ordered_json j;
    j["theta"] = line.theta;
    j["p"] = line.p;
    return j;
}

ordered_json witness_json(const WitnessLine& w) {
    ordered_json j = line_json(w.line);
    j["clearance"] = w.clearance;
    j["penetration"] = w.penetration;
    // Chord endpoints inside the unit square.
    const Point d = w.line.direction(), f = w.line.foot();
    if (auto chord = clip(Segment(f - 4.0 * d, f + 4.0 * d), ConvexPolygon::unit_square())) {
        j["chord"] = ordered_json::array({point_json(chord->a()), point_json(chord->b())});
    }
    return j;
}

std::string scalar_text(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void flatten(std::ostream& out, const ordered_json& v, const std::string& key) {
    const bool scalar_array =
        v.is_array() && std::none_of(v.begin(), v.end(), [](const auto& e) { return e.is_structured(); });
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            flatten(out, it.value(), key.empty() ? it.key() : key + "." + it.key());
        }
    } else if (v.is_array() && !scalar_array) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(out, v[i], key + "[" + std::to_string(i) + "]");
    } else {
        out << key << ": " << scalar_text(v) << '\n';
    }
}

struct Emitter {
    std::ostream& out;
    std::string format;

    void operator()(const ordered_json& doc, const std::string& summary) const {
        if (format == "json") {
            out << doc.dump(2) << '\n';
            return;
        }
        out << summary << '\n';
        flatten(out, doc, "");
    }
};

double deg_to_rad(double deg) { return deg * kPi / 180.0; }

struct Options {
    std::string input = "-";
    std::string format = "text";
    std::string out_path;
    std::string w = "0.1793";
    std::string phi_deg;
    double w1 = 1.0 / 20.0;
    double w2 = 1.0 / 1000.0;
    double clearance = 1e-6;
    double angular_step = 1e-4;
    unsigned precision_bits = 64;
    bool trace = false;
    std::string square = "U3";
    std::string kind;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    bool partition = false;
    bool witness = false;
    std::string lp_out;
};

WitnessConfig witness_config(const Options& o) { return {o.angular_step, o.clearance}; }

int verdict_code(Verdict v) {
    switch (v) {
        case Verdict::opaque: return exit_code::ok;
        case Verdict::witness: return exit_code::witness;
        case Verdict::inconclusive: return exit_code::inconclusive;
    }
    return exit_code::internal;
}

const char* verdict_text(Verdict v) {
    switch (v) {
        case Verdict::opaque: return "opaque-up-to-clearance";
        case Verdict::witness: return "witness found";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

int cmd_verify(const Options& o, std::istream& in, const Emitter& emit) {
    const BarrierFile file = parse_barrier_file(read_input(o.input, in));
    const WitnessSearch s = find_witness(file.barrier, ConvexPolygon::unit_square(), witness_config(o));
    const MainDirectionSlack slack = main_direction_slack(file.barrier);
    ordered_json doc;
    if (file.name) doc["name"] = *file.name;
    doc["segments"] = file.barrier.size();
    doc["length"] = file.barrier.total_length();
    doc["verdict"] = verdict_text(s.verdict);
    doc["directions_scanned"] = s.directions_scanned;
    doc["largest_gap"] = s.largest_gap;
    doc["witness"] = s.witness ? witness_json(*s.witness) : ordered_json();
    doc["main_direction_slack"] = {{"diagonal1", slack.diagonal1},
                                   {"diagonal2", slack.diagonal2},
                                   {"x", slack.x},
                                   {"y", slack.y}};
    char summary[128];
    std::snprintf(summary, sizeof summary, "%s, length %.12g", verdict_text(s.verdict),
                  file.barrier.total_length());
    emit(doc, summary);
    return verdict_code(s.verdict);
}

int cmd_witness(const Options& o, std::istream& in, std::ostream& out) {
    const BarrierFile file = parse_barrier_file(read_input(o.input, in));
    const WitnessSearch s = find_witness(file.barrier, ConvexPolygon::unit_square(), witness_config(o));
    ordered_json doc;
    doc["verdict"] = verdict_text(s.verdict);
    doc["witness"] = s.witness ? witness_json(*s.witness) : ordered_json();
    out << doc.dump(2) << '\n';
    return verdict_code(s.verdict);
}

ordered_json budget_json(const AdvanceBudget& b) {
    return {{"tan_beta", b.tan_beta},         {"x1", b.x1},           {"x3", b.x3},
            {"x4", b.x4},                     {"y1", b.y1},           {"y2", b.y2},
            {"z_advance", b.z_advance},       {"x_translation", b.x_translation},
            {"total_advance", b.total_advance}};
}

int cmd_advance(const Options& o, std::istream& in, const Emitter& emit) {
    const BarrierFile file = parse_barrier_file(read_input(o.input, in));
    AdvanceConfig cfg;
    if (!o.phi_deg.empty()) cfg.phi = deg_to_rad(nearest_double(parse_rational(o.phi_deg)));
    cfg.w1 = o.w1;
    cfg.w2 = o.w2;
    cfg.min_clearance = o.clearance;
    if (o.square == "U") {
        cfg.bounding_square = BoundingSquare::U;
    } else if (o.square != "U3") {
        throw UsageError("--square must be U3 or U");
    }
    const AdvanceResult r = run_advance(file.barrier, cfg);
    ordered_json doc;
    doc["outcome"] = to_string(r.outcome);
    doc["witness"] = r.witness ? witness_json(*r.witness) : ordered_json();
    doc["anchor_low"] = point_json(r.state.anchor_low);
    doc["anchor_high"] = point_json(r.state.anchor_high);
    doc["events"] = r.state.events.size();
    doc["resweeps"] = r.state.resweeps();
    doc["max_anchor_advance"] = r.state.max_anchor_advance(cfg.w1);
    try {
        doc["budget"] = budget_json(advance_budget(band_stats(file.barrier), cfg.w1, cfg.phi));
    } catch (const std::invalid_argument&) {
        doc["budget"] = nullptr;
    }
    if (o.trace) {
        ordered_json trace = ordered_json::array();
        for (const SweepEvent& e : r.state.events) {
            trace.push_back({{"kind", to_string(e.kind)},
                             {"segment", e.segment},
                             {"displacement", e.displacement},
                             {"outside_bounding", e.outside_bounding},
                             {"resweep", e.resweep},
                             {"low_x", e.low_x},
                             {"high_x", e.high_x}});
        }
        doc["trace"] = trace;
    }
    emit(doc, std::string("advance: ") + to_string(r.outcome));
    return r.outcome == AdvanceOutcome::success ? exit_code::witness : exit_code::inconclusive;
}

Body body_of(const json& j) {
    if (j.contains("segment")) {
        const json& s = j["segment"];
        if (!s.is_array() || s.size() != 2) throw std::invalid_argument("segment must be [[x,y],[x,y]]");
        return Segment(point_of(s[0]), point_of(s[1]));
    }
    if (j.contains("polygon")) {
        std::vector<Point> pts;
        for (const json& p : j["polygon"]) pts.push_back(point_of(p));
        return ConvexPolygon(std::move(pts));
    }
    throw std::invalid_argument("body needs a \"segment\" or \"polygon\" key");
}

std::vector<Body> parse_bodies(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail_at(text, e.byte > 0 ? e.byte - 1 : 0, "invalid JSON: " + json_reason(e));
    }
    try {
        std::vector<Body> bodies;
        for (const json& b : doc.at("bodies")) bodies.push_back(body_of(b));
        if (bodies.empty() || bodies.size() > 2) throw std::invalid_argument("expected one or two bodies");
        return bodies;
    } catch (const std::exception& e) {
        fail_at(text, std::nullopt, e.what());
    }
}

int cmd_measure(const Options& o, std::istream& in, const Emitter& emit) {
    std::vector<Body> bodies;
    if (o.input == "square") {
        bodies.push_back(ConvexPolygon::unit_square());
    } else {
        bodies = parse_bodies(read_input(o.input, in));
    }
    ordered_json doc;
    ordered_json single = ordered_json::array();
    for (const Body& b : bodies) single.push_back(line_measure_single(b));
    doc["single"] = single;
    std::string summary = "measure " + ordered_json(single[0]).dump();
    if (bodies.size() == 2) {
        const MeetingMeasure m = meeting_measure(bodies[0], bodies[1]);
        doc["l_ext"] = m.covers.l_ext;
        doc["l_int"] = m.covers.l_int;
        doc["meeting"] = m.measure;
        summary = "meeting measure " + ordered_json(m.measure).dump();
        const Segment* s = std::get_if<Segment>(&bodies[0]);
        const ConvexPolygon* poly = std::get_if<ConvexPolygon>(&bodies[1]);
        if (!s) {
            s = std::get_if<Segment>(&bodies[1]);
            poly = std::get_if<ConvexPolygon>(&bodies[0]);
        }
        if (s && poly) {
            const ConeBound c = cone_angle_bound(*s, *poly);
            doc["cone_bound"] = {{"theta_max", c.theta_max}, {"apex", point_json(c.apex)}, {"bound", c.bound}};
        }
    }
    if (o.samples > 0) {
        const std::optional<Body> second = bodies.size() == 2 ? std::optional<Body>(bodies[1]) : std::nullopt;
        const McEstimate mc = mc_meeting_measure(bodies[0], second, o.samples, o.seed);
        doc["monte_carlo"] = {{"estimate", mc.estimate},
                              {"standard_error", mc.standard_error},
                              {"hits", mc.hits},
                              {"samples", mc.samples}};
    }
    emit(doc, summary);
    return exit_code::ok;
}

constexpr double kReferenceObjectiveTolerance = 5e-7;

int cmd_lp_bound(const Options& o, const Emitter& emit, std::ostream& err) {
    const LpParameters params = LpParameters::parse(o.w, o.phi_deg.empty() ? "1.5589" : o.phi_deg);
    const auto t0 = std::chrono::steady_clock::now();
    const LinearProgram lp = build_interior_lp(params, o.precision_bits);
    if (!o.lp_out.empty()) {
        std::ofstream f(o.lp_out, std::ios::binary);
        if (!f) throw UsageError("cannot write " + o.lp_out);
        f << to_lp_format(lp);
    }
    const LpSolution sol = solve_exact(lp);
    const Rational checked = check_dual_certificate(lp, sol.dual);
    const bool certificate_ok = checked == sol.optimum;
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const double optimum = nearest_double(sol.optimum);
    const bool above = sol.optimum > Rational(200001, 100000);
    ordered_json doc;
    doc["w"] = to_string(params.w);
    doc["phi_deg"] = to_string(params.phi_deg);
    doc["precision_bits"] = o.precision_bits;
    doc["optimum"] = {{"exact", to_string(sol.optimum)}, {"decimal", optimum}};
    doc["above_2_00001"] = above;
    ordered_json multipliers;
    for (std::size_t i = 0; i < lp.rows(); ++i) {
        if (sol.dual.y[i] != 0) multipliers[lp.row_names[i]] = to_string(sol.dual.y[i]);
    }
    doc["certificate"] = {{"verified", certificate_ok}, {"bound", to_string(checked)}, {"multipliers", multipliers}};
    doc["pivots"] = sol.pivots;
    doc["seconds"] = seconds;
    ordered_json primal;
    for (std::size_t j = 0; j < lp.cols(); ++j) primal[lp.variable_names[j]] = nearest_double(sol.primal[j]);
    doc["primal"] = primal;

    const RegressionReport reg = primal_regression(sol.primal);
    const double gap = std::abs(optimum - kReferenceOptimum);
    ordered_json regression;
    regression["max_deviation"] = reg.max_deviation;
    regression["worst"] = variable_name(reg.worst);
    regression["objective_gap"] = gap;
    regression["coordinates_match"] = reg.max_deviation <= 1e-4;
    regression["objective_match"] = gap <= kReferenceObjectiveTolerance;
    if (reg.max_deviation > 1e-4 && gap <= kReferenceObjectiveTolerance) {
        char note[256];
        std::snprintf(note, sizeof note,
                      "alternate optimum: primal differs from the reference table by up to %.3g (at %s) "
                      "while the objective agrees within %.1g",
                      reg.max_deviation, variable_name(reg.worst).c_str(), kReferenceObjectiveTolerance);
        regression["note"] = note;
        err << "note: " << note << '\n';
    }
    doc["regression"] = regression;

    std::string summary = above ? "optimum > 2.00001" : "optimum <= 2.00001";
    summary += certificate_ok ? ", certificate OK" : ", certificate FAILED";
    char tail[64];
    std::snprintf(tail, sizeof tail, " (optimum = %.17g)", optimum);
    emit(doc, summary + tail);
    return certificate_ok ? exit_code::ok : exit_code::internal;
}

int cmd_construct(const Options& o, std::ostream& out) {
    const auto kind = parse_kind(o.kind);
    if (!kind) throw UsageError("unknown barrier kind: " + o.kind);
    const NamedBarrier nb = make_barrier(*kind);
    ordered_json doc = ordered_json::parse(serialize_barrier(nb.barrier, std::string(kind_name(*kind))));
    doc["closed_form_length"] = nb.closed_form_length;
    doc["length"] = nb.barrier.total_length();
    out << doc.dump(2) << '\n';
    return exit_code::ok;
}

int cmd_audit(const Options& o, std::istream& in, const Emitter& emit) {
    const BarrierFile file = parse_barrier_file(read_input(o.input, in));
    const double w = nearest_double(parse_rational(o.w));
    const double phi = deg_to_rad(nearest_double(parse_rational(o.phi_deg.empty() ? "1.5589" : o.phi_deg)));
    const RegionPartition13 partition = build_partition(w);
    const DecompositionVector v = decompose(file.barrier, partition, phi, DecomposeMode::lenient);

    ordered_json doc;
    doc["length"] = file.barrier.total_length();
    ordered_json values;
    for (std::size_t i = 0; i < kVariableCount; ++i) values[variable_name(i)] = v.values[i];
    doc["decomposition"] = {{"w", w},
                            {"phi_deg", phi * 180 / kPi},
                            {"outside", v.outside},
                            {"X", v.class_total(AngleTag::X)},
                            {"Y", v.class_total(AngleTag::Y)},
                            {"Z", v.class_total(AngleTag::Z)},
                            {"values", values}};

    std::string summary;
    if (v.outside <= kGeoEps) {
        const Symmetry g = normalizing_symmetry(v);
        const DecompositionVector norm = decompose(apply_symmetry(file.barrier, g), partition, phi);
        const DoubleLp lp = build_interior_lp_double(w, phi);
        const std::vector<double> slacks = row_slacks(lp, norm);
        ordered_json rows = ordered_json::array();
        std::size_t violated = 0;
        for (std::size_t i = 0; i < slacks.size(); ++i) {
            const bool ok = slacks[i] >= -1e-9;
            violated += !ok;
            rows.push_back({{"name", interior_rows()[i].name}, {"slack", slacks[i]}, {"satisfied", ok}});
        }
        doc["normalizing_symmetry"] = to_string(g);
        doc["lp_rows"] = rows;
        summary = std::to_string(slacks.size() - violated) + "/" + std::to_string(slacks.size()) +
                  " LP rows satisfied after " + to_string(g);
    } else {
        doc["normalizing_symmetry"] = nullptr;
        summary = "barrier leaves the unit square; LP rows skipped";
    }

    BarrierRegions regions;
    regions.w1 = o.w1;
    regions.w2 = o.w2;
    const LemmaReport rep = evaluate_length_bounds(file.barrier, regions);
    ordered_json lemma_rows = ordered_json::array();
    for (const LemmaRow& r : rep.rows) {
        lemma_rows.push_back({{"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"satisfied", r.satisfied}});
    }
    ordered_json diagnostics;
    for (const auto& [k, val] : rep.diagnostics) diagnostics[k] = val;
    doc["length_bounds"] = {{"hypotheses_applicable", rep.hypotheses_applicable},
                            {"all_satisfied", rep.all_satisfied()},
                            {"rows", lemma_rows},
                            {"diagnostics", diagnostics}};
    emit(doc, summary);
    return exit_code::ok;
}

int cmd_render(const Options& o, std::istream& in, std::ostream& out) {
    const BarrierFile file = parse_barrier_file(read_input(o.input, in));
    RenderOptions ro;
    if (o.partition) ro.partition_w = nearest_double(parse_rational(o.w));
    if (o.witness) {
        const WitnessSearch s = find_witness(file.barrier, ConvexPolygon::unit_square(), witness_config(o));
        if (s.witness) ro.witness = s.witness->line;
    }
    const std::string svg = render_svg(file.barrier, ro);
    if (o.out_path.empty()) {
        out << svg;
    } else {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) throw UsageError("cannot write " + o.out_path);
        f << svg;
    }
    return exit_code::ok;
}

void add_input(CLI::App* cmd, Options& o) {
    cmd->add_option("input", o.input, "barrier JSON file, or - for stdin")->capture_default_str();
}

void add_format(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();
}

void add_search(CLI::App* cmd, Options& o) {
    cmd->add_option("--clearance", o.clearance)->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--angular-step", o.angular_step)->check(CLI::PositiveNumber)->capture_default_str();
}

}  // namespace

BarrierFile parse_barrier_file(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail_at(text, e.byte > 0 ? e.byte - 1 : 0, "invalid JSON: " + json_reason(e));
    }
    if (!doc.is_object()) fail_at(text, 0, "expected an object with a \"segments\" array");
    if (!doc.contains("segments") || !doc["segments"].is_array() || doc["segments"].empty()) {
        fail_at(text, 0, "\"segments\" must be a non-empty array");
    }
    BarrierFile file{std::nullopt, Barrier({Segment({0, 0}, {1, 0})})};
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) fail_at(text, 0, "\"name\" must be a string");
        file.name = doc["name"].get<std::string>();
    }
    std::vector<Segment> segs;
    const json& arr = doc["segments"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        try {
            const json& s = arr[i];
            if (!s.is_array() || s.size() != 2) throw std::invalid_argument("segment must be [[x1,y1],[x2,y2]]");
            segs.emplace_back(point_of(s[0]), point_of(s[1]));
        } catch (const std::exception& e) {
            fail_at(text, segment_offset(text, i), "segment " + std::to_string(i) + ": " + e.what());
        }
    }
    file.barrier = Barrier(std::move(segs));
    return file;
}

std::string serialize_barrier(const Barrier& barrier, const std::optional<std::string>& name) {
    ordered_json doc;
    if (name) doc["name"] = *name;
    ordered_json segs = ordered_json::array();
    for (const Segment& s : barrier.segments()) segs.push_back({point_json(s.a()), point_json(s.b())});
    doc["segments"] = segs;
    return doc.dump();
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s = buf;
    if (s == "-0.0000") s = "0.0000";
    return s;
}

}  // namespace

std::string render_svg(const Barrier& barrier, const RenderOptions& options) {
    double x0 = -0.1, y0 = -0.1, x1 = 1.1, y1 = 1.1;
    for (const Segment& s : barrier.segments()) {
        for (Point p : {s.a(), s.b()}) {
            x0 = std::min(x0, p.x - 0.1);
            y0 = std::min(y0, p.y - 0.1);
            x1 = std::max(x1, p.x + 0.1);
            y1 = std::max(y1, p.y + 0.1);
        }
    }
    const double k = options.scale;
    auto X = [&](double x) { return fmt(k * (x - x0)); };
    auto Y = [&](double y) { return fmt(k * (y1 - y)); };
    auto line = [&](Point a, Point b, const char* cls) {
        return std::string("  <line class=\"") + cls + "\" x1=\"" + X(a.x) + "\" y1=\"" + Y(a.y) + "\" x2=\"" +
               X(b.x) + "\" y2=\"" + Y(b.y) + "\"/>\n";
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(k * (x1 - x0)) +
                      "\" height=\"" + fmt(k * (y1 - y0)) + "\">\n";
    svg += "  <style>line{stroke-linecap:round}.segment{stroke:#000;stroke-width:3}"
           ".cut{stroke:#888;stroke-width:1}.witness{stroke:#c00;stroke-width:1.5;stroke-dasharray:6 4}"
           "</style>\n";
    svg += "  <rect class=\"square\" x=\"" + X(0) + "\" y=\"" + Y(1) + "\" width=\"" + fmt(k) +
           "\" height=\"" + fmt(k) + "\" fill=\"none\" stroke=\"#444\"/>\n";
    if (options.partition_w) {
        const double w = *options.partition_w;
        for (int corner = 0; corner < 4; ++corner) {
            auto map = [corner](Point p) {
                if (corner == 1 || corner == 2) p.x = 1 - p.x;
                if (corner == 2 || corner == 3) p.y = 1 - p.y;
                return p;
            };
            svg += line(map({0.5, 0}), map({0, w}), "cut");
            svg += line(map({w, 0}), map({0, 0.5}), "cut");
        }
    }
    for (const Segment& s : barrier.segments()) svg += line(s.a(), s.b(), "segment");
    if (options.witness) {
        const Point d = options.witness->direction(), f = options.witness->foot();
        const double reach = 4.0 * (x1 - x0 + y1 - y0) + norm(f);
        if (auto c = clip(Segment(f - reach * d, f + reach * d), ConvexPolygon::rectangle(x0, y0, x1, y1))) {
            svg += line(c->a(), c->b(), "witness");
        }
    }
    svg += "</svg>\n";
    return svg;
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Opaque barriers of the unit square", "opaque"};
    app.require_subcommand(1);
    Options o;

    auto* verify = app.add_subcommand("verify", "search for a witness line; exit 0 opaque, 1 witness, 2 inconclusive");
    add_input(verify, o);
    add_search(verify, o);
    add_format(verify, o);

    auto* witness = app.add_subcommand("witness", "print a witness line as JSON");
    add_input(witness, o);
    add_search(witness, o);

    auto* advance = app.add_subcommand("advance", "run the anchored sweep");
    add_input(advance, o);
    advance->add_option("--phi-deg", o.phi_deg, "angle class threshold in degrees");
    advance->add_option("--w1", o.w1)->capture_default_str();
    advance->add_option("--w2", o.w2)->capture_default_str();
    advance->add_option("--clearance", o.clearance)->check(CLI::PositiveNumber)->capture_default_str();
    advance->add_option("--square", o.square, "bounding square, U3 or U")->capture_default_str();
    advance->add_flag("--trace", o.trace, "include the event log");
    add_format(advance, o);

    auto* measure = app.add_subcommand("measure", "line measures of one or two convex bodies");
    measure->add_option("input", o.input, "JSON {\"bodies\": [...]}, - for stdin, or 'square'")
        ->capture_default_str();
    measure->add_option("--samples", o.samples, "Monte-Carlo samples (0 = skip)")->capture_default_str();
    measure->add_option("--seed", o.seed)->capture_default_str();
    add_format(measure, o);

    auto* lp = app.add_subcommand("lp-bound", "solve the interior-barrier LP exactly");
    lp->add_option("--w", o.w, "cut parameter (decimal or a/b)")->capture_default_str();
    lp->add_option("--phi-deg", o.phi_deg, "angle class threshold in degrees (default 1.5589)");
    lp->add_option("--precision-bits", o.precision_bits)->check(CLI::Range(32u, 4096u))->capture_default_str();
    lp->add_option("--lp-out", o.lp_out, "write the rounded LP in LP format");
    add_format(lp, o);

    auto* construct = app.add_subcommand("construct", "print a bundled barrier as JSON");
    construct->add_option("kind", o.kind)->required();

    auto* audit = app.add_subcommand("audit", "region decomposition, LP rows and length bounds");
    add_input(audit, o);
    audit->add_option("--w", o.w)->capture_default_str();
    audit->add_option("--phi-deg", o.phi_deg, "default 1.5589");
    audit->add_option("--w1", o.w1)->capture_default_str();
    audit->add_option("--w2", o.w2)->capture_default_str();
    add_format(audit, o);

    auto* render = app.add_subcommand("render", "SVG picture of a barrier");
    add_input(render, o);
    render->add_option("--out", o.out_path, "output file (default stdout)");
    render->add_flag("--partition", o.partition, "overlay the 13-region partition");
    render->add_option("--w", o.w, "partition cut parameter")->capture_default_str();
    render->add_flag("--witness", o.witness, "overlay a witness line if one exists");
    add_search(render, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return exit_code::usage;
    }

    const Emitter emit{out, o.format};
    try {
        if (*verify) return cmd_verify(o, in, emit);
        if (*witness) return cmd_witness(o, in, out);
        if (*advance) return cmd_advance(o, in, emit);
        if (*measure) return cmd_measure(o, in, emit);
        if (*lp) return cmd_lp_bound(o, emit, err);
        if (*construct) return cmd_construct(o, out);
        if (*audit) return cmd_audit(o, in, emit);
        if (*render) return cmd_render(o, in, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_code::parse;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const OverlapError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::parse;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_code::internal;
    }
    return exit_code::usage;
}

}  // namespace opaque

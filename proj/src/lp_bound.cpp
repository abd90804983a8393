#include "opaque/lp_bound.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace opaque {

namespace {

using enum Region;
constexpr AngleTag kX = AngleTag::X, kY = AngleTag::Y, kZ = AngleTag::Z;

std::size_t var(AngleTag t, Region r) { return DecompositionVector::index(t, r); }

std::vector<Region> complement(std::initializer_list<Region> removed) {
    std::vector<Region> out;
    for (std::size_t r = 0; r < kRegionCount; ++r) {
        const auto reg = static_cast<Region>(r);
        if (std::find(removed.begin(), removed.end(), reg) == removed.end()) out.push_back(reg);
    }
    return out;
}

// |M ∩ S| + |N ∩ S| sin phi + |Z ∩ S| cos phi, with M the main class.
SymbolicRow side_projection(std::string name, AngleTag main, const std::vector<Region>& S,
                            Rhs rhs) {
    const AngleTag other = main == kX ? kY : kX;
    SymbolicRow row{std::move(name), {}, rhs, false};
    for (Region r : S) {
        row.terms.push_back({var(main, r), Coef::one});
        row.terms.push_back({var(other, r), Coef::sin_phi});
        row.terms.push_back({var(kZ, r), Coef::cos_phi});
    }
    return row;
}

SymbolicRow diagonal_projection(std::string name, const std::vector<Region>& S, Rhs rhs) {
    SymbolicRow row{std::move(name), {}, rhs, false};
    for (Region r : S) {
        row.terms.push_back({var(kX, r), Coef::cos_quarter_minus_phi});
        row.terms.push_back({var(kY, r), Coef::cos_quarter_minus_phi});
        row.terms.push_back({var(kZ, r), Coef::one});
    }
    return row;
}

// Strip of width h along a cut hypotenuse; `steep` is the class crossing it
// at the larger angle.
SymbolicRow hypotenuse_projection(std::string name, AngleTag steep, const std::vector<Region>& S) {
    const AngleTag other = steep == kX ? kY : kX;
    SymbolicRow row{std::move(name), {}, Rhs::h, false};
    for (Region r : S) {
        row.terms.push_back({var(steep, r), Coef::cos_psi_minus_phi});
        row.terms.push_back({var(other, r), Coef::sin_psi_plus_phi});
        row.terms.push_back({var(kZ, r), Coef::one});
    }
    return row;
}

SymbolicRow advance_row(std::string name, AngleTag main, std::initializer_list<Region> rotating,
                        Region first_family_base) {
    const AngleTag other = main == kX ? kY : kX;
    SymbolicRow row{std::move(name), {}, Rhs::one_minus_2w, false};
    for (Region r : rotating) row.terms.push_back({var(main, r), Coef::advance_rotation});
    row.terms.push_back({var(main, C0), Coef::advance_x});
    const auto base = static_cast<std::size_t>(first_family_base);
    std::vector<Region> swept{C0};
    for (std::size_t k = 0; k < 4; ++k) swept.push_back(static_cast<Region>(base + k));
    for (Region r : swept) row.terms.push_back({var(other, r), Coef::advance_y});
    for (Region r : swept) row.terms.push_back({var(kZ, r), Coef::advance_z});
    return row;
}

SymbolicRow balance_row(std::string name, AngleTag t, std::initializer_list<Region> plus,
                        std::initializer_list<Region> minus) {
    SymbolicRow row{std::move(name), {}, Rhs::zero, true};
    for (Region r : plus) row.terms.push_back({var(t, r), Coef::one});
    for (Region r : minus) row.terms.push_back({var(t, r), Coef::minus_one});
    return row;
}

std::vector<SymbolicRow> make_rows() {
    std::vector<SymbolicRow> rows;
    {
        SymbolicRow xy{"xy", {}, Rhs::two, false};
        SymbolicRow zz{"zz", {}, Rhs::two_sqrt2, false};
        for (std::size_t r = 0; r < kRegionCount; ++r) {
            const auto reg = static_cast<Region>(r);
            xy.terms.push_back({var(kX, reg), Coef::sqrt2_cos_quarter_minus_phi});
            xy.terms.push_back({var(kY, reg), Coef::sqrt2_cos_quarter_minus_phi});
            xy.terms.push_back({var(kZ, reg), Coef::sqrt2});
            zz.terms.push_back({var(kX, reg), Coef::sqrt2});
            zz.terms.push_back({var(kY, reg), Coef::sqrt2});
            zz.terms.push_back({var(kZ, reg), Coef::sqrt2_cos_phi});
        }
        rows.push_back(std::move(xy));
        rows.push_back(std::move(zz));
    }
    rows.push_back(side_projection("xa", kX, {C0, A1, A2, A3, A4}, Rhs::one_minus_2w));
    rows.push_back(side_projection("yb", kY, {C0, B1, B2, B3, B4}, Rhs::one_minus_2w));
    rows.push_back(side_projection("xaii_1", kX, {C0, A1, A4}, Rhs::half_minus_w));
    rows.push_back(side_projection("xaii_2", kX, {C0, A2, A3}, Rhs::half_minus_w));
    rows.push_back(side_projection("ybii_1", kY, {C0, B1, B2}, Rhs::half_minus_w));
    rows.push_back(side_projection("ybii_2", kY, {C0, B3, B4}, Rhs::half_minus_w));
    rows.push_back(side_projection("xbcii_1", kX, complement({B1, C1, B4, C4}), Rhs::one_minus_w));
    rows.push_back(side_projection("xbcii_2", kX, complement({B2, C2, B3, C3}), Rhs::one_minus_w));
    rows.push_back(side_projection("yacii_1", kY, complement({A1, C1, A2, C2}), Rhs::one_minus_w));
    rows.push_back(side_projection("yacii_2", kY, complement({A3, C3, A4, C4}), Rhs::one_minus_w));

    const Region A[] = {A1, A2, A3, A4}, B[] = {B1, B2, B3, B4}, C[] = {C1, C2, C3, C4};
    for (int i = 0; i < 4; ++i) {
        rows.push_back(diagonal_projection("zplus_" + std::to_string(i + 1), {C0, A[i], B[i], C[i]},
                                           Rhs::quarter_sqrt2));
    }
    for (int i = 0; i < 4; ++i) {
        rows.push_back(diagonal_projection("zminus_" + std::to_string(i + 1),
                                           complement({A[i], B[i], C[i]}),
                                           Rhs::three_quarter_sqrt2));
    }
    for (int i = 0; i < 4; ++i) {
        rows.push_back(hypotenuse_projection("cb_" + std::to_string(i + 1), kX, {B[i], C[i]}));
    }
    for (int i = 0; i < 4; ++i) {
        rows.push_back(hypotenuse_projection("ca_" + std::to_string(i + 1), kY, {A[i], C[i]}));
    }
    rows.push_back(balance_row("xa1234", kX, {A1, A2}, {A3, A4}));
    rows.push_back(advance_row("advancex", kX, {A1, A2}, A1));
    rows.push_back(balance_row("yb1423", kY, {B1, B4}, {B2, B3}));
    rows.push_back(advance_row("advancey", kY, {B1, B4}, B1));
    return rows;
}

std::vector<std::string> variable_names() {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < kVariableCount; ++i) out.push_back(variable_name(i));
    return out;
}

}  // namespace

const std::vector<SymbolicRow>& interior_rows() {
    static const std::vector<SymbolicRow> rows = make_rows();
    return rows;
}

LinearProgram LinearProgram::select_rows(const std::vector<std::size_t>& keep) const {
    LinearProgram out;
    out.variable_names = variable_names;
    out.precision_bits = precision_bits;
    for (std::size_t i : keep) {
        out.row_names.push_back(row_names.at(i));
        out.A.push_back(A.at(i));
        out.b.push_back(b.at(i));
    }
    return out;
}

LinearProgram build_interior_lp(const LpParameters& params, unsigned bits) {
    if (bits < 32) throw std::invalid_argument("precision_bits must be at least 32");
    if (!(params.w > 0 && params.w < Rational(1, 2))) {
        throw std::invalid_argument("w must lie in (0, 1/2)");
    }
    if (!(params.phi_deg > 0)) throw std::invalid_argument("phi must be positive");

    const unsigned prec = std::max(512u, 2 * bits + 64);
    const Enclosure one = Enclosure::exact(1);
    const Enclosure w = Enclosure::exact(params.w);
    const Enclosure pi = enclose_pi(prec);
    const Enclosure phi = Enclosure::exact(params.phi_deg) * pi / Enclosure::exact(180);
    const Enclosure sqrt2 = enclose_sqrt(Enclosure::exact(2), prec);
    const Enclosure psi = enclose_atan(Enclosure::exact(2) * w, prec);
    if (!(phi.hi < psi.lo)) throw std::invalid_argument("phi must be smaller than atan(2w)");
    const Enclosure beta = enclose_atan(one / (one - Enclosure::exact(2) * w), prec);
    const Enclosure quarter_pi = pi / Enclosure::exact(4);
    const Enclosure sin_beta = enclose_sin(beta, prec);

    std::map<Coef, Enclosure> coef;
    coef[Coef::one] = one;
    coef[Coef::minus_one] = Enclosure::exact(-1);
    coef[Coef::sqrt2] = sqrt2;
    coef[Coef::cos_quarter_minus_phi] = enclose_cos(quarter_pi - phi, prec);
    coef[Coef::sqrt2_cos_quarter_minus_phi] = sqrt2 * coef[Coef::cos_quarter_minus_phi];
    coef[Coef::cos_phi] = enclose_cos(phi, prec);
    coef[Coef::sqrt2_cos_phi] = sqrt2 * coef[Coef::cos_phi];
    coef[Coef::sin_phi] = enclose_sin(phi, prec);
    coef[Coef::cos_psi_minus_phi] = enclose_cos(psi - phi, prec);
    coef[Coef::sin_psi_plus_phi] = enclose_sin(psi + phi, prec);
    coef[Coef::advance_x] = enclose_sin(beta + phi, prec) / sin_beta;
    coef[Coef::advance_y] = enclose_cos(beta - phi, prec) / sin_beta;
    coef[Coef::advance_z] = one / sin_beta;
    coef[Coef::advance_rotation] = coef[Coef::advance_x] / (one - w);

    std::map<Rhs, Enclosure> rhs;
    rhs[Rhs::zero] = Enclosure::exact(0);
    rhs[Rhs::two] = Enclosure::exact(2);
    rhs[Rhs::two_sqrt2] = Enclosure::exact(2) * sqrt2;
    rhs[Rhs::one_minus_2w] = one - Enclosure::exact(2) * w;
    rhs[Rhs::half_minus_w] = Enclosure::exact(Rational(1, 2)) - w;
    rhs[Rhs::one_minus_w] = one - w;
    rhs[Rhs::quarter_sqrt2] = sqrt2 / Enclosure::exact(4);
    rhs[Rhs::three_quarter_sqrt2] = Enclosure::exact(3) * sqrt2 / Enclosure::exact(4);
    rhs[Rhs::h] = one / enclose_sqrt(Enclosure::exact(4) + one / (w * w), prec);

    LinearProgram lp;
    lp.precision_bits = bits;
    lp.variable_names = variable_names();
    for (const SymbolicRow& row : interior_rows()) {
        std::vector<Rational> a(kVariableCount, Rational(0));
        for (const auto& [j, c] : row.terms) a[j] = round_up_dyadic(coef.at(c).hi, bits);
        lp.row_names.push_back(row.name);
        lp.A.push_back(std::move(a));
        lp.b.push_back(round_down_dyadic(rhs.at(row.rhs).lo, bits));
    }
    return lp;
}

DoubleLp build_interior_lp_double(double w, double phi) {
    const double sqrt2 = std::numbers::sqrt2;
    const double psi = std::atan(2 * w);
    const double beta = std::atan(1 / (1 - 2 * w));
    const double q = kPi / 4 - phi;
    const auto value = [&](Coef c) {
        switch (c) {
            case Coef::one: return 1.0;
            case Coef::minus_one: return -1.0;
            case Coef::sqrt2: return sqrt2;
            case Coef::sqrt2_cos_quarter_minus_phi: return sqrt2 * std::cos(q);
            case Coef::sqrt2_cos_phi: return sqrt2 * std::cos(phi);
            case Coef::sin_phi: return std::sin(phi);
            case Coef::cos_phi: return std::cos(phi);
            case Coef::cos_quarter_minus_phi: return std::cos(q);
            case Coef::cos_psi_minus_phi: return std::cos(psi - phi);
            case Coef::sin_psi_plus_phi: return std::sin(psi + phi);
            case Coef::advance_x: return std::sin(beta + phi) / std::sin(beta);
            case Coef::advance_y: return std::cos(beta - phi) / std::sin(beta);
            case Coef::advance_z: return 1 / std::sin(beta);
            case Coef::advance_rotation: return std::sin(beta + phi) / std::sin(beta) / (1 - w);
        }
        return 0.0;
    };
    const auto bound = [&](Rhs r) {
        switch (r) {
            case Rhs::zero: return 0.0;
            case Rhs::two: return 2.0;
            case Rhs::two_sqrt2: return 2 * sqrt2;
            case Rhs::one_minus_2w: return 1 - 2 * w;
            case Rhs::half_minus_w: return 0.5 - w;
            case Rhs::one_minus_w: return 1 - w;
            case Rhs::quarter_sqrt2: return sqrt2 / 4;
            case Rhs::three_quarter_sqrt2: return 3 * sqrt2 / 4;
            case Rhs::h: return 1 / std::sqrt(4 + 1 / (w * w));
        }
        return 0.0;
    };
    DoubleLp lp;
    for (const SymbolicRow& row : interior_rows()) {
        std::vector<double> a(kVariableCount, 0.0);
        for (const auto& [j, c] : row.terms) a[j] = value(c);
        lp.row_names.push_back(row.name);
        lp.A.push_back(std::move(a));
        lp.b.push_back(bound(row.rhs));
    }
    return lp;
}

std::vector<double> row_slacks(const DoubleLp& lp, const DecompositionVector& v) {
    std::vector<double> out;
    for (std::size_t i = 0; i < lp.A.size(); ++i) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < kVariableCount; ++j) lhs += lp.A[i][j] * v.values[j];
        out.push_back(lhs - lp.b[i]);
    }
    return out;
}

LpSolution solve_exact(const LinearProgram& lp) {
    // Simplex on the dual: max b^T y s.t. A^T y <= 1, y >= 0. The origin is
    // a feasible start, so no phase one is needed.
    const std::size_t m = lp.rows(), n = lp.cols();
    const std::size_t cols = m + n;
    std::vector<std::vector<Rational>> T(n, std::vector<Rational>(cols + 1, Rational(0)));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) T[j][i] = lp.A[i][j];
        T[j][m + j] = 1;
        T[j][cols] = 1;
    }
    std::vector<Rational> obj(cols + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i) obj[i] = -lp.b[i];
    std::vector<std::size_t> basis(n);
    for (std::size_t j = 0; j < n; ++j) basis[j] = m + j;

    LpSolution sol;
    while (true) {
        std::size_t enter = cols;
        for (std::size_t k = 0; k < cols; ++k) {
            if (obj[k] < 0) {
                enter = k;
                break;
            }
        }
        if (enter == cols) break;

        std::size_t leave = n;
        Rational best;
        for (std::size_t j = 0; j < n; ++j) {
            if (T[j][enter] <= 0) continue;
            const Rational ratio = T[j][cols] / T[j][enter];
            if (leave == n || ratio < best || (ratio == best && basis[j] < basis[leave])) {
                leave = j;
                best = ratio;
            }
        }
        if (leave == n) throw InfeasibleLp("constraints are infeasible (dual unbounded)");

        const Rational piv = T[leave][enter];
        for (Rational& v : T[leave]) v /= piv;
        auto eliminate = [&](std::vector<Rational>& row) {
            const Rational f = row[enter];
            if (f == 0) return;
            for (std::size_t k = 0; k <= cols; ++k) {
                if (T[leave][k] != 0) row[k] -= f * T[leave][k];
            }
        };
        for (std::size_t j = 0; j < n; ++j) {
            if (j != leave) eliminate(T[j]);
        }
        eliminate(obj);
        basis[leave] = enter;
        ++sol.pivots;
    }

    sol.dual.y.assign(m, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        if (basis[j] < m) sol.dual.y[basis[j]] = T[j][cols];
    }
    sol.primal.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) sol.primal[j] = obj[m + j];
    sol.optimum = obj[cols];

    // Exact optimality check.
    Rational primal_obj = 0, dual_obj = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (sol.primal[j] < 0) throw std::logic_error("negative primal entry");
        primal_obj += sol.primal[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < n; ++j) lhs += lp.A[i][j] * sol.primal[j];
        if (lhs < lp.b[i]) throw std::logic_error("primal violates row " + lp.row_names[i]);
        dual_obj += lp.b[i] * sol.dual.y[i];
    }
    sol.dual.bound = check_dual_certificate(lp, sol.dual);
    if (primal_obj != dual_obj || dual_obj != sol.optimum) {
        throw std::logic_error("nonzero duality gap");
    }
    return sol;
}

Rational check_dual_certificate(const LinearProgram& lp, const DualCertificate& cert) {
    if (cert.y.size() != lp.rows()) throw CertificateError("multiplier count mismatch", 0);
    for (std::size_t i = 0; i < cert.y.size(); ++i) {
        if (cert.y[i] < 0) throw CertificateError("negative multiplier for " + lp.row_names[i], i);
    }
    for (std::size_t j = 0; j < lp.cols(); ++j) {
        Rational col = 0;
        for (std::size_t i = 0; i < lp.rows(); ++i) col += lp.A[i][j] * cert.y[i];
        if (col > 1) {
            throw CertificateError("dual constraint violated at " + lp.variable_names[j], j);
        }
    }
    Rational bound = 0;
    for (std::size_t i = 0; i < lp.rows(); ++i) bound += lp.b[i] * cert.y[i];
    return bound;
}

RegressionReport primal_regression(const std::vector<Rational>& primal) {
    if (primal.size() != kVariableCount) throw std::invalid_argument("expected 39 values");
    RegressionReport rep;
    for (std::size_t j = 0; j < kVariableCount; ++j) {
        rep.deviation[j] = std::abs(nearest_double(primal[j]) - kReferencePrimal[j]);
        if (rep.deviation[j] > rep.max_deviation) {
            rep.max_deviation = rep.deviation[j];
            rep.worst = j;
        }
    }
    return rep;
}

std::string to_lp_format(const LinearProgram& lp) {
    std::ostringstream out;
    out << "\\ interior barrier LP, coefficients rounded to multiples of 2^-" << lp.precision_bits
        << "\n";
    out << "Minimize\n obj:";
    for (std::size_t j = 0; j < lp.cols(); ++j) {
        out << (j ? " +" : " ") << " " << lp.variable_names[j];
        if (j % 10 == 9) out << "\n     ";
    }
    out << "\nSubject To\n";
    for (std::size_t i = 0; i < lp.rows(); ++i) {
        out << " " << lp.row_names[i] << ":";
        for (std::size_t j = 0; j < lp.cols(); ++j) {
            const Rational& a = lp.A[i][j];
            if (a == 0) continue;
            out << "\n    " << (a < 0 ? "- " : "+ ") << to_exact_decimal(abs(a)) << " "
                << lp.variable_names[j];
        }
        out << "\n    >= " << to_exact_decimal(lp.b[i]) << "\n";
    }
    out << "End\n";
    return out.str();
}

}  // namespace opaque

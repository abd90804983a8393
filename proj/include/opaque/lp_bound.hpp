#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "opaque/audit.hpp"
#include "opaque/exact.hpp"

namespace opaque {

struct LpParameters {
    Rational w;
    Rational phi_deg;

    static LpParameters reference() { return {Rational(1793, 10000), Rational(15589, 10000)}; }
    static LpParameters parse(std::string_view w, std::string_view phi_deg) {
        return {parse_rational(w), parse_rational(phi_deg)};
    }
};

// Symbolic coefficient of one LP entry; see the instantiation functions for
// their values.
enum class Coef {
    one,
    minus_one,
    sqrt2,
    sqrt2_cos_quarter_minus_phi,  // sqrt2 cos(pi/4 - phi)
    sqrt2_cos_phi,
    sin_phi,
    cos_phi,
    cos_quarter_minus_phi,  // cos(pi/4 - phi)
    cos_psi_minus_phi,
    sin_psi_plus_phi,
    advance_x,           // sin(beta + phi) / sin(beta)
    advance_y,           // cos(beta - phi) / sin(beta)
    advance_z,           // 1 / sin(beta)
    advance_rotation,    // advance_x / (1 - w)
};

enum class Rhs { zero, two, two_sqrt2, one_minus_2w, half_minus_w, one_minus_w, quarter_sqrt2,
                 three_quarter_sqrt2, h };

struct SymbolicRow {
    std::string name;
    std::vector<std::pair<std::size_t, Coef>> terms;  // (variable index, coefficient)
    Rhs rhs = Rhs::zero;
    bool symmetry_normalization = false;  // one of the two WLOG rows
};

// The 32 rows of the interior-barrier LP, in their canonical order.
const std::vector<SymbolicRow>& interior_rows();

// min sum(x) subject to A x >= b, x >= 0 (objective is all-ones).
struct LinearProgram {
    std::vector<std::string> row_names;
    std::vector<std::string> variable_names;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    unsigned precision_bits = 0;

    std::size_t rows() const { return A.size(); }
    std::size_t cols() const { return variable_names.size(); }
    LinearProgram select_rows(const std::vector<std::size_t>& keep) const;
};

// Irrational entries are enclosed and rounded to multiples of
// 2^-precision_bits: coefficients up, right-hand sides down.
LinearProgram build_interior_lp(const LpParameters& params, unsigned precision_bits = 64);

// Plain double evaluation of the same rows (for checking barriers against them).
struct DoubleLp {
    std::vector<std::string> row_names;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
};

DoubleLp build_interior_lp_double(double w, double phi);

// Per-row slack A_i v - b_i.
std::vector<double> row_slacks(const DoubleLp& lp, const DecompositionVector& v);

struct DualCertificate {
    std::vector<Rational> y;
    Rational bound;
};

struct LpSolution {
    Rational optimum;
    std::vector<Rational> primal;
    DualCertificate dual;
    std::size_t pivots = 0;
};

struct InfeasibleLp : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnboundedLp : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CertificateError : std::runtime_error {
    CertificateError(const std::string& what, std::size_t index)
        : std::runtime_error(what), index(index) {}
    std::size_t index;
};

LpSolution solve_exact(const LinearProgram& lp);

// Checks y >= 0 and A^T y <= 1 exactly and returns y^T b.
Rational check_dual_certificate(const LinearProgram& lp, const DualCertificate& cert);

inline constexpr std::array<double, kVariableCount> kReferencePrimal = {
    0.2762651, 0.0726680, 0.1076756, 0.0419541, 0.0000000, 0.0227020, 0.0000000, 0.0000000,
    0.1177023, 0.0292085, 0.1469319, 0.0481085, 0.1096004,
    0.0000000, 0.0000000, 0.0000000, 0.0911907, 0.1297475, 0.1903349, 0.0000000, 0.2869624,
    0.0271035, 0.1387073, 0.0803509, 0.0520305, 0.0000000,
    0.0000000, 0.0000000, 0.0000000, 0.0000000, 0.0000000, 0.0000000, 0.0000000, 0.0000000,
    0.0000000, 0.0000000, 0.0000000, 0.0000000, 0.0307674};

inline constexpr double kReferenceOptimum = 2.0000113;

struct RegressionReport {
    std::array<double, kVariableCount> deviation{};
    double max_deviation = 0.0;
    std::size_t worst = 0;
};

RegressionReport primal_regression(const std::vector<Rational>& primal);

// CPLEX LP text; all numbers are exact decimals.
std::string to_lp_format(const LinearProgram& lp);

}  // namespace opaque

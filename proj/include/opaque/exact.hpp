#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace opaque {

using Rational = mpq_class;

// Parses "12", "-0.1793", "1.5e-3" or "a/b" exactly. Throws
// std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);  // "a/b" or "a"
// Exact decimal when the denominator has only factors 2 and 5, "a/b" otherwise.
std::string to_exact_decimal(const Rational& q);
// Nearest double (ties to even), unlike mpq_get_d which truncates.
double nearest_double(const Rational& q);

// Smallest multiple of 2^-bits that is >= q, and largest that is <= q.
Rational round_up_dyadic(const Rational& q, unsigned bits);
Rational round_down_dyadic(const Rational& q, unsigned bits);

// Closed interval with rational endpoints, lo <= true value <= hi.
struct Enclosure {
    Rational lo, hi;

    static Enclosure exact(const Rational& q) { return {q, q}; }
    Rational width() const { return hi - lo; }
    bool contains(const Rational& q) const { return lo <= q && q <= hi; }
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator/(const Enclosure& a, const Enclosure& b);  // b must exclude 0

// Outward-rounded enclosures computed with MPFR at `prec` bits.
Enclosure enclose_pi(unsigned prec);
Enclosure enclose_sqrt(const Enclosure& x, unsigned prec);
Enclosure enclose_atan(const Enclosure& x, unsigned prec);
Enclosure enclose_sin(const Enclosure& x, unsigned prec);  // x within [-pi/2, pi/2]
Enclosure enclose_cos(const Enclosure& x, unsigned prec);  // x within [0, pi]

}  // namespace opaque

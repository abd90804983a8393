#include "opaque/exact.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace opaque {

namespace {

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

class Mpfr {
public:
    explicit Mpfr(unsigned prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }

    Rational to_rational() {
        if (!mpfr_number_p(v_)) throw std::domain_error("non-finite MPFR value");
        Rational q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return q;
    }

private:
    mpfr_t v_;
};

using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// f(q) rounded in direction `dir`, for f increasing near q.
Rational increasing_at(UnaryFn f, const Rational& q, unsigned prec, mpfr_rnd_t dir) {
    Mpfr x(prec + 16), r(prec);
    mpfr_set_q(x.get(), q.get_mpq_t(), dir);
    f(r.get(), x.get(), dir);
    return r.to_rational();
}

Rational decreasing_at(UnaryFn f, const Rational& q, unsigned prec, mpfr_rnd_t dir) {
    const mpfr_rnd_t arg_dir = dir == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD;
    Mpfr x(prec + 16), r(prec);
    mpfr_set_q(x.get(), q.get_mpq_t(), arg_dir);
    f(r.get(), x.get(), dir);
    return r.to_rational();
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw std::invalid_argument("empty number");
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const Rational num = parse_rational(s.substr(0, slash));
        const Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return num / den;
    }
    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_point = false, seen_digit = false;
    for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
        if (s[i] == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits += s[i];
            seen_digit = true;
            if (seen_point) --scale;
        } else {
            throw std::invalid_argument("malformed number '" + s + "'");
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed number '" + s + "'");
    if (i < s.size()) {
        const std::string exp = s.substr(i + 1);
        if (exp.empty() || exp.size() > 6) throw std::invalid_argument("bad exponent in '" + s + "'");
        std::size_t used = 0;
        const long e = std::stol(exp, &used);
        if (used != exp.size()) throw std::invalid_argument("bad exponent in '" + s + "'");
        scale += e;
    }
    Rational q{mpz_class(digits, 10)};
    if (scale > 0) q *= pow10(static_cast<unsigned long>(scale));
    if (scale < 0) q /= pow10(static_cast<unsigned long>(-scale));
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_exact_decimal(const Rational& q) {
    mpz_class den = q.get_den();
    unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
    unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
    if (den != 1) return to_string(q);
    const unsigned long digits = std::max(twos, fives);
    const mpz_class scaled = mpz_class(q * Rational(pow10(digits)));
    mpz_class mag = abs(scaled);
    std::string body = mag.get_str();
    if (digits > 0) {
        if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
        body.insert(body.size() - digits, ".");
    }
    return (scaled < 0 ? "-" : "") + body;
}

double nearest_double(const Rational& q) {
    Mpfr x(53);
    mpfr_set_q(x.get(), q.get_mpq_t(), MPFR_RNDN);
    return mpfr_get_d(x.get(), MPFR_RNDN);
}

Rational round_up_dyadic(const Rational& q, unsigned bits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    const Rational scaled = q * Rational(scale);
    mpz_class n;
    mpz_cdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rational r(n, scale);
    r.canonicalize();
    return r;
}

Rational round_down_dyadic(const Rational& q, unsigned bits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    const Rational scaled = q * Rational(scale);
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rational r(n, scale);
    r.canonicalize();
    return r;
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    const Rational p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(std::begin(p), std::end(p)),
            *std::max_element(std::begin(p), std::end(p))};
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.lo <= 0 && b.hi >= 0) throw std::domain_error("division by an enclosure containing 0");
    return a * Enclosure{1 / b.hi, 1 / b.lo};
}

Enclosure enclose_pi(unsigned prec) {
    Mpfr lo(prec), hi(prec);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    return {lo.to_rational(), hi.to_rational()};
}

Enclosure enclose_sqrt(const Enclosure& x, unsigned prec) {
    if (x.lo < 0) throw std::domain_error("sqrt of a negative enclosure");
    return {increasing_at(mpfr_sqrt, x.lo, prec, MPFR_RNDD),
            increasing_at(mpfr_sqrt, x.hi, prec, MPFR_RNDU)};
}

Enclosure enclose_atan(const Enclosure& x, unsigned prec) {
    return {increasing_at(mpfr_atan, x.lo, prec, MPFR_RNDD),
            increasing_at(mpfr_atan, x.hi, prec, MPFR_RNDU)};
}

Enclosure enclose_sin(const Enclosure& x, unsigned prec) {
    // 3/2 < pi/2 keeps the argument on the increasing branch.
    if (x.lo < Rational(-3, 2) || x.hi > Rational(3, 2)) {
        throw std::domain_error("sin enclosure outside its monotone range");
    }
    return {increasing_at(mpfr_sin, x.lo, prec, MPFR_RNDD),
            increasing_at(mpfr_sin, x.hi, prec, MPFR_RNDU)};
}

Enclosure enclose_cos(const Enclosure& x, unsigned prec) {
    if (x.lo < 0 || x.hi > 3) throw std::domain_error("cos enclosure outside its monotone range");
    return {decreasing_at(mpfr_cos, x.hi, prec, MPFR_RNDD),
            decreasing_at(mpfr_cos, x.lo, prec, MPFR_RNDU)};
}

}  // namespace opaque

#pragma once

// Exact rational scalars. Thin helpers over GMP's mpq_class, which already
// guarantees canonical form (lowest terms, positive denominator).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace convind {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "n", "n/d", optional leading '-', arbitrary precision.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + text);
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator in rational literal: " + text);
    r.canonicalize();
    return r;
}

// Serialized form is always "num/den", including "x/1" for integers, so the
// on-disk format round-trips without a separate integer case.
inline std::string rational_to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline int sign(const Rational& r) { return sgn(r); }

// Exact floor as an arbitrary-precision integer.
inline Integer rational_floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

// Largest h = m / 2^precision_bits with h >= 0 and h*h <= x. Used where a
// true square root is irrational but any exact lower bound is sound.
inline Rational rational_sqrt_lower(const Rational& x, unsigned precision_bits = 64) {
    if (sgn(x) < 0) throw std::invalid_argument("sqrt of negative rational");
    if (sgn(x) == 0) return Rational(0);
    // Want floor(sqrt(x * 4^bits)) as an integer m, then h = m / 2^bits.
    Integer scaled_num = x.get_num() << (2 * precision_bits);
    Integer q = scaled_num / x.get_den();  // floor(num * 4^bits / den)
    Integer m;
    mpz_sqrt(m.get_mpz_t(), q.get_mpz_t());
    Rational h(m, Integer(1) << precision_bits);
    h.canonicalize();
    return h;
}

}  // namespace convind

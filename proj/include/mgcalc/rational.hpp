#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace mgcalc {

// Exact rational arithmetic everywhere; no floating point in the core.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Canonical reduced string: "13", "0", "-3/2".  mpq_class keeps values
// canonicalized (positive denominator, gcd 1), so get_str is already in
// this form.
inline std::string to_string(const Rational& q) {
    return q.get_str();
}

// Strict parser for the wire format: optional '-', digits, optional
// '/digits'.  Non-canonical input such as "6/4" is accepted and reduced;
// decimals and whitespace are rejected.
inline Rational parse_rational(const std::string& text) {
    const auto bad = [&]() -> std::invalid_argument {
        return std::invalid_argument("rational: cannot parse \"" + text + "\" (want p or p/q)");
    };
    std::size_t pos = 0;
    if (pos < text.size() && text[pos] == '-') ++pos;
    std::size_t digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos, ++digits;
    if (digits == 0) throw bad();
    if (pos < text.size()) {
        if (text[pos] != '/') throw bad();
        ++pos;
        digits = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos, ++digits;
        if (digits == 0 || pos != text.size()) throw bad();
    }
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0) throw bad();
    if (q.get_den() == 0) throw std::invalid_argument("rational: zero denominator in \"" + text + "\"");
    q.canonicalize();
    return q;
}

// Floor toward negative infinity.  The descent identities involve negative
// arguments, where truncation toward zero would be wrong.
inline Integer rational_floor(const Rational& q) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return out;
}

inline int sign(const Rational& q) {
    return sgn(q);
}

}  // namespace mgcalc

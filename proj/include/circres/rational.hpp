#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "circres/errors.hpp"

namespace circres {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q" or "-p/q" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw DomainError("empty rational literal");
    Rational r;
    if (r.set_str(s, 10) != 0) throw DomainError("malformed rational literal '" + s + "'");
    if (r.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

/// Canonical "p/q" text; integers print without a denominator.
inline std::string format_rational(const Rational& r) { return r.get_str(10); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Nearest long double (within one ulp). mpq_get_d truncates, so the
/// quotient is formed with ~67 significant bits and scaled back instead.
inline long double to_long_double(const Rational& r) {
    const Integer& num = r.get_num();
    const Integer& den = r.get_den();
    if (num == 0) return 0.0L;
    if (mpz_sizeinbase(num.get_mpz_t(), 2) < 60 && mpz_sizeinbase(den.get_mpz_t(), 2) < 60)
        return static_cast<long double>(num.get_si()) / static_cast<long double>(den.get_si());
    const long shift = 67 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2))
                             - static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
    Integer q = abs(num);
    Integer d = den;
    if (shift >= 0)
        q <<= static_cast<mp_bitcnt_t>(shift);
    else
        d <<= static_cast<mp_bitcnt_t>(-shift);
    q /= d;
    const Integer hi = q >> 32;
    const Integer lo = q - (hi << 32);
    const long double mag = std::ldexp(static_cast<long double>(hi.get_ui()), 32) + static_cast<long double>(lo.get_ui());
    const long double value = std::ldexp(mag, static_cast<int>(-shift));
    return num < 0 ? -value : value;
}

inline double to_double(const Rational& r) { return static_cast<double>(to_long_double(r)); }

}  // namespace circres

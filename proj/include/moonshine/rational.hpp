#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "moonshine/error.hpp"

namespace moonshine {

/// Exact rational number. Backed by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0) throw ParseError("not a rational number: '" + s + "'", 0);
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 0);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::int64_t to_int64(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
    return z.get_si();
}

/// floor(r) as a machine integer.
inline std::int64_t floor_int(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return to_int64(q);
}

/// ceil(r) as a machine integer.
inline std::int64_t ceil_int(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return to_int64(q);
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace moonshine

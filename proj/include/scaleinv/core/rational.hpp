#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace scaleinv {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Exact rational number. GMP keeps every result canonical (reduced, positive
/// denominator); values built from a numerator/denominator pair go through
/// make_rational so the invariant holds there too.
using Rational = mpq_class;

// Error hierarchy shared by every module. Mathematical negative answers
// (NOT_FOUND, INFINITE, ...) are values, not exceptions.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
    using Error::Error;
};
struct InvalidInput : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0)
        throw InvalidInput("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

inline Rational abs_value(const Rational& q) { return abs(q); }

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty())
        throw InvalidInput("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        throw InvalidInput("malformed rational literal '" + s + "'");
    }
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer integer_pow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Rational rational_pow(const Rational& base, long exp) {
    if (exp < 0) {
        if (base == 0)
            throw InvalidInput("zero raised to a negative power");
        return rational_pow(Rational(1) / base, -exp);
    }
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exp));
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exp));
    return make_rational(n, d);
}

inline Integer gcd_of(const Integer& a, const Integer& b) { return gcd(a, b); }
inline Integer lcm_of(const Integer& a, const Integer& b) { return lcm(a, b); }

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

} // namespace scaleinv

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace rotor {

using BigInt = mpz_class;
/// mpq_class keeps values canonical: lowest terms, positive denominator.
using Rational = mpq_class;

/// Parses "p/q" or "p". Rejects whitespace, non-reduced fractions, signed or
/// zero denominators.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);
/// value - floor(value), always in [0, 1).
Rational frac(const Rational& value);

/// Natural log of a positive big integer without overflow; -inf for zero.
double log(const BigInt& value);

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

} // namespace rotor

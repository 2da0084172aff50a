#pragma once

// Exact rationals over arbitrary-precision integers (GMP).

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace confalg {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p", "p/q" (optional surrounding blanks). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Falling factorial x(x-1)...(x-k+1); defined for every integer x.
Integer falling_factorial(const Integer& x, unsigned k);

/// Generalized binomial C(x, k) = x(x-1)...(x-k+1)/k!, valid for negative x.
Rational binomial(const Integer& x, unsigned k);

Integer factorial(unsigned k);

inline Rational sign_power(unsigned k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

} // namespace confalg

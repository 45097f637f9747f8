#pragma once

// Exact integer and rational types shared by every module. Values are GMP
// backed; nothing in a decision path goes through floating point.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace multmatch {

using Int = mpz_class;
using Rational = mpq_class;

/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
Int parse_int(std::string_view text);

/// Parses "p/q" or a plain integer; the result is canonicalized.
Rational parse_rational(std::string_view text);

std::string to_string(const Int& value);
/// Canonical "p/q" form, or "p" when the denominator is one.
std::string to_string(const Rational& value);

Int floor_of(const Rational& value);
Int ceil_of(const Rational& value);
bool is_integral(const Rational& value);

/// Floor division; the divisor must be positive.
Int floor_div(const Int& num, const Int& den);
Int ceil_div(const Int& num, const Int& den);

/// Non-negative remainder of num modulo a positive modulus.
Int mod_floor(const Int& num, const Int& modulus);

/// d | n, with d nonzero.
bool divides(const Int& d, const Int& n);

inline Rational to_rational(const Int& value) { return Rational(value); }

}  // namespace multmatch

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace symcap {

// Exact rationals. GMP keeps mpq_class values canonical as long as every
// constructor path goes through make_rational or parse_rational.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

// Accepts "p/q", integers and finite decimals such as "1.5" or "-0.25".
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
bool is_integer(const Rational& q);

long to_long(const Integer& z);

} // namespace symcap

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace filiform {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "p/q" or a num/den pair; the result is canonical.
Rational parse_rational(std::string_view text);
Rational make_rational(const std::string& num, const std::string& den);

std::string to_string(const Rational& q);

Integer factorial(long n);
Rational binomial(long n, long k);

// Bit size used to pick pivots during elimination.
size_t bit_size(const Rational& q);


}  // namespace filiform

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace opengame {

// Exact rational, always canonicalized by GMP.
using Rational = mpq_class;

// Formats as "num/den" even for integers ("1/1"), so reports never mix forms.
std::string to_fraction(const Rational& value);

// Accepts "n/d" or a plain integer "n". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// base^-exponent.
Rational inverse_power(std::uint64_t base, std::uint64_t exponent);

mpz_class integer_power(std::uint64_t base, std::uint64_t exponent);

int compare_to_one(const Rational& value);

}  // namespace opengame

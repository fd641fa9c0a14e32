#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pmcp {

/// Exact arbitrary-precision rational. GMP keeps values canonical
/// (gcd(num, den) = 1, den > 0) through arithmetic.
using Rat = mpq_class;

/// Parses "num/den" or a plain integer string (optionally signed).
/// Decimal notation ("0.5", "5e-1") is rejected.
Rat rat_from_string(std::string_view text);

/// Canonical form: "num/den", or just "num" when the denominator is 1.
std::string rat_to_string(const Rat& value);

/// Decimal approximation with exactly six digits after the point,
/// rounded half away from zero. Display only; never used in comparisons.
std::string rat_to_decimal(const Rat& value);

/// Exact conversion of a finite double (doubles are dyadic rationals).
Rat rat_from_double_exact(double value);

}  // namespace pmcp

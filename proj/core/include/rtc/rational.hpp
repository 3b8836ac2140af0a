#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rtc {

/// Exact rational scalar used for constants and the algebraic models.
using Rational = mpq_class;

/// Parses `p/q`, an integer, or either with a leading sign. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical text form: `p` when the denominator is 1, `p/q` otherwise.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace rtc

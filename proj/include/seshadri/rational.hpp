#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace seshadri {

using Integer = boost::multiprecision::cpp_int;
/// Always normalized: reduced, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Integer& value);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Accepts "p", "-p" and "p/q"; throws InvalidInput otherwise.
Rational parse_rational(std::string_view text);

Integer parse_integer(std::string_view text);

/// Narrowing for loop bounds and matrix sizes; throws InvalidInput when out of range.
std::int64_t to_int64(const Integer& value, std::string_view what);

inline Rational make_rational(const Integer& num, const Integer& den) { return Rational(num, den); }

}  // namespace seshadri

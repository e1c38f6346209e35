#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hyptype {

// Exact edge lengths. Always kept in lowest terms by the backend.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Parses "n" or "p/q" (optional leading '-'); throws InputError otherwise.
Rational parse_rational(std::string_view text);

// "n" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& value);

}  // namespace hyptype

#include "hyptype/rational.hpp"

#include <cctype>

#include "hyptype/errors.hpp"

namespace hyptype {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw InputError("malformed rational '" + std::string(whole) + "'");
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw InputError("malformed rational '" + std::string(whole) + "'");
    }
  }
  return Integer(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  Integer numerator = parse_integer(body.substr(0, slash), text);
  Integer denominator = 1;
  if (slash != std::string_view::npos) {
    denominator = parse_integer(body.substr(slash + 1), text);
    if (denominator == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  }
  if (negative) numerator = -numerator;
  return Rational(numerator, denominator);
}

std::string format_rational(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace hyptype

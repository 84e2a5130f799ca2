#pragma once

// Arbitrary-precision rational reference for expression evaluation. Shares
// nothing with the library's digit-string arithmetic.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace oracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline cpp_rational rational_from_decimal(const std::string& text) {
  const bool neg = !text.empty() && text[0] == '-';
  std::string body = neg ? text.substr(1) : text;
  cpp_int den = 1;
  const auto dot = body.find('.');
  if (dot != std::string::npos) {
    for (std::size_t i = dot + 1; i < body.size(); ++i) den *= 10;
    body.erase(dot, 1);
  }
  cpp_rational r(cpp_int(body), den);
  return neg ? cpp_rational(-r) : r;
}

// Round half away from zero to `places` decimals and print with exactly
// that many fraction digits.
inline std::string round_rational(const cpp_rational& x, int places) {
  cpp_int scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  cpp_rational scaled = x * scale;
  const bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  cpp_int q = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
  cpp_rational frac = scaled - cpp_rational(q);
  if (frac * 2 >= 1) q += 1;
  std::string digits = q.str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places))
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (neg && q != 0) digits.insert(0, "-");
  return digits;
}

inline std::string evaluate(const std::string& lhs, char op, const std::string& rhs, int places) {
  const cpp_rational a = rational_from_decimal(lhs);
  const cpp_rational b = rational_from_decimal(rhs);
  cpp_rational r;
  switch (op) {
    case '+': r = a + b; break;
    case '-': r = a - b; break;
    case '*': r = a * b; break;
    default: r = a / b; break;
  }
  return round_rational(r, places);
}

}  // namespace oracle

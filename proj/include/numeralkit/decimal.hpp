#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "numeralkit/error.hpp"

namespace numeralkit {

namespace detail {

// Unsigned magnitudes as ASCII digit strings, most significant first, no
// leading zeros except the single digit "0".

inline std::string strip_leading_zeros(std::string s) {
  const auto nz = s.find_first_not_of('0');
  if (nz == std::string::npos) return "0";
  s.erase(0, nz);
  return s;
}

inline int mag_compare(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  const int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

inline std::string mag_add(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  int carry = 0;
  auto i = static_cast<std::ptrdiff_t>(a.size()) - 1;
  auto j = static_cast<std::ptrdiff_t>(b.size()) - 1;
  while (i >= 0 || j >= 0 || carry) {
    int d = carry;
    if (i >= 0) d += a[i--] - '0';
    if (j >= 0) d += b[j--] - '0';
    out.push_back(static_cast<char>('0' + d % 10));
    carry = d / 10;
  }
  std::reverse(out.begin(), out.end());
  return strip_leading_zeros(std::move(out));
}

// requires a >= b
inline std::string mag_sub(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size());
  int borrow = 0;
  auto i = static_cast<std::ptrdiff_t>(a.size()) - 1;
  auto j = static_cast<std::ptrdiff_t>(b.size()) - 1;
  while (i >= 0) {
    int d = (a[i--] - '0') - borrow;
    if (j >= 0) d -= b[j--] - '0';
    borrow = d < 0 ? 1 : 0;
    if (d < 0) d += 10;
    out.push_back(static_cast<char>('0' + d));
  }
  std::reverse(out.begin(), out.end());
  return strip_leading_zeros(std::move(out));
}

inline std::string mag_mul(std::string_view a, std::string_view b) {
  std::string acc(a.size() + b.size(), 0);
  for (auto i = static_cast<std::ptrdiff_t>(a.size()) - 1; i >= 0; --i) {
    int carry = 0;
    for (auto j = static_cast<std::ptrdiff_t>(b.size()) - 1; j >= 0; --j) {
      const int cur = acc[i + j + 1] + (a[i] - '0') * (b[j] - '0') + carry;
      acc[i + j + 1] = static_cast<char>(cur % 10);
      carry = cur / 10;
    }
    acc[i] = static_cast<char>(acc[i] + carry);
  }
  for (char& c : acc) c = static_cast<char>(c + '0');
  return strip_leading_zeros(std::move(acc));
}

// Schoolbook long division; returns {quotient, remainder}. divisor != "0".
inline std::pair<std::string, std::string> mag_divmod(std::string_view dividend,
                                                      std::string_view divisor) {
  std::string quotient;
  std::string rem = "0";
  for (char c : dividend) {
    rem = rem == "0" ? std::string(1, c) : rem + c;
    int q = 0;
    while (mag_compare(rem, divisor) >= 0) {
      rem = mag_sub(rem, divisor);
      ++q;
    }
    quotient.push_back(static_cast<char>('0' + q));
  }
  return {strip_leading_zeros(std::move(quotient)), rem};
}

inline std::string shift_left(std::string mag, int zeros) {
  if (mag == "0" || zeros <= 0) return mag;
  mag.append(static_cast<std::size_t>(zeros), '0');
  return mag;
}

}  // namespace detail

/// Lossless signed decimal: value = sign * digits / 10^scale.
///
/// The integer part carries no leading zeros unless it is exactly "0", so
/// `digits().size() > scale()` always holds. Zero is never negative.
/// Arithmetic results come back canonical (trailing fraction zeros removed);
/// a scale fixed by rounding survives until something re-canonicalizes it.
class ExactDecimal {
 public:
  ExactDecimal() = default;

  static ExactDecimal from_parts(bool negative, std::string digits, int scale) {
    if (digits.empty() || scale < 0)
      throw Error(ErrorKind::InvalidDecimal, "empty digit string or negative scale");
    for (char c : digits)
      if (c < '0' || c > '9') throw Error(ErrorKind::InvalidDecimal, "non-digit in '" + digits + "'");
    ExactDecimal d;
    const auto want = static_cast<std::size_t>(scale) + 1;
    if (digits.size() < want) digits.insert(0, want - digits.size(), '0');
    const auto int_len = digits.size() - static_cast<std::size_t>(scale);
    std::size_t drop = 0;
    while (drop + 1 < int_len && digits[drop] == '0') ++drop;
    digits.erase(0, drop);
    d.digits_ = std::move(digits);
    d.scale_ = scale;
    d.negative_ = negative && !d.is_zero();
    return d;
  }

  static ExactDecimal from_int(std::int64_t v) {
    const bool neg = v < 0;
    // avoid overflow on INT64_MIN
    const auto mag = neg ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
    return from_parts(neg, std::to_string(mag), 0);
  }

  /// Plain ASCII form: optional '-', one or more digits, optional '.' followed
  /// by one or more digits. Leading integer zeros are normalized away; the
  /// written fraction length is preserved as the scale.
  static ExactDecimal parse(std::string_view text) {
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && text[i] == '-') {
      neg = true;
      ++i;
    }
    const auto int_begin = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == int_begin) throw Error(ErrorKind::InvalidDecimal, "no integer digits in '" + std::string(text) + "'");
    std::string digits(text.substr(int_begin, i - int_begin));
    int scale = 0;
    if (i < text.size() && text[i] == '.') {
      ++i;
      const auto frac_begin = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
      if (i == frac_begin) throw Error(ErrorKind::InvalidDecimal, "empty fraction in '" + std::string(text) + "'");
      digits.append(text.substr(frac_begin, i - frac_begin));
      scale = static_cast<int>(i - frac_begin);
    }
    if (i != text.size()) throw Error(ErrorKind::InvalidDecimal, "trailing characters in '" + std::string(text) + "'");
    return from_parts(neg, std::move(digits), scale);
  }

  bool negative() const { return negative_; }
  const std::string& digits() const { return digits_; }
  int scale() const { return scale_; }
  bool is_zero() const { return digits_.find_first_not_of('0') == std::string::npos; }

  std::string integer_part() const { return digits_.substr(0, digits_.size() - static_cast<std::size_t>(scale_)); }
  std::string fraction_part() const { return digits_.substr(digits_.size() - static_cast<std::size_t>(scale_)); }

  /// Digit characters in the plain rendering (sign and marker excluded).
  int digit_count() const { return static_cast<int>(digits_.size()); }

  /// Digits of the canonical form once leading zeros are dropped (at least 1).
  /// Integer trailing zeros count; fraction trailing zeros do not.
  int significant_digits() const {
    const std::string d = canonical().digits_;
    const auto first = d.find_first_not_of('0');
    return first == std::string::npos ? 1 : static_cast<int>(d.size() - first);
  }

  std::string to_string() const {
    std::string s;
    if (negative_) s.push_back('-');
    s += integer_part();
    if (scale_ > 0) {
      s.push_back('.');
      s += fraction_part();
    }
    return s;
  }

  ExactDecimal canonical() const {
    int scale = scale_;
    std::string digits = digits_;
    while (scale > 0 && digits.back() == '0') {
      digits.pop_back();
      --scale;
    }
    return from_parts(negative_, std::move(digits), scale);
  }

  /// Rescales to exactly `places` fraction digits: zero-padding when widening,
  /// rounding half away from zero when narrowing.
  ExactDecimal round_to(int places) const {
    if (places < 0) throw Error(ErrorKind::InvalidDecimal, "negative rounding precision");
    if (places >= scale_) return from_parts(negative_, digits_ + std::string(places - scale_, '0'), places);
    const auto keep = digits_.size() - static_cast<std::size_t>(scale_ - places);
    std::string head = digits_.substr(0, keep);
    if (digits_[keep] >= '5') head = detail::mag_add(head, "1");
    return from_parts(negative_, std::move(head), places);
  }

  ExactDecimal operator-() const {
    ExactDecimal d = *this;
    d.negative_ = !negative_ && !is_zero();
    return d;
  }

  ExactDecimal abs() const {
    ExactDecimal d = *this;
    d.negative_ = false;
    return d;
  }

  /// Structural equality: same sign, digits and scale.
  friend bool operator==(const ExactDecimal&, const ExactDecimal&) = default;

  /// Numeric ordering (1.50 and 1.5 compare equal).
  friend std::strong_ordering compare(const ExactDecimal& a, const ExactDecimal& b) {
    if (a.negative_ != b.negative_) return a.negative_ ? std::strong_ordering::less : std::strong_ordering::greater;
    const int s = std::max(a.scale_, b.scale_);
    const int c = detail::mag_compare(detail::strip_leading_zeros(detail::shift_left(a.digits_, s - a.scale_)),
                                      detail::strip_leading_zeros(detail::shift_left(b.digits_, s - b.scale_)));
    const int signed_c = a.negative_ ? -c : c;
    return signed_c < 0 ? std::strong_ordering::less
                        : (signed_c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend bool same_value(const ExactDecimal& a, const ExactDecimal& b) { return compare(a, b) == 0; }

  /// Magnitude scaled to an integer at `scale` fraction digits (scale >= this->scale()).
  std::string scaled_magnitude(int scale) const {
    return detail::strip_leading_zeros(detail::shift_left(digits_, scale - scale_));
  }

 private:
  bool negative_ = false;
  std::string digits_ = "0";
  int scale_ = 0;
};

namespace detail {

inline ExactDecimal signed_sum(bool neg_a, const std::string& a, bool neg_b, const std::string& b, int scale) {
  if (neg_a == neg_b) return ExactDecimal::from_parts(neg_a, mag_add(a, b), scale);
  const int c = mag_compare(a, b);
  if (c == 0) return ExactDecimal{};
  if (c > 0) return ExactDecimal::from_parts(neg_a, mag_sub(a, b), scale);
  return ExactDecimal::from_parts(neg_b, mag_sub(b, a), scale);
}

}  // namespace detail

inline ExactDecimal add(const ExactDecimal& a, const ExactDecimal& b) {
  const int s = std::max(a.scale(), b.scale());
  return detail::signed_sum(a.negative(), a.scaled_magnitude(s), b.negative(), b.scaled_magnitude(s), s).canonical();
}

inline ExactDecimal subtract(const ExactDecimal& a, const ExactDecimal& b) { return add(a, -b); }

inline ExactDecimal multiply(const ExactDecimal& a, const ExactDecimal& b) {
  return ExactDecimal::from_parts(a.negative() != b.negative(),
                                  detail::mag_mul(a.scaled_magnitude(a.scale()), b.scaled_magnitude(b.scale())),
                                  a.scale() + b.scale())
      .canonical();
}

/// Quotient rounded half away from zero to exactly `places` fraction digits.
/// One guard digit is computed by truncating division; since truncation keeps
/// the guard digit intact, rounding on it is exact.
inline ExactDecimal divide(const ExactDecimal& a, const ExactDecimal& b, int places) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  if (places < 0) throw Error(ErrorKind::InvalidDecimal, "negative rounding precision");
  // a/b = (A/10^sa) / (B/10^sb); scaled by 10^(places+1): A*10^(sb+places+1) / (B*10^sa)
  const std::string num = detail::shift_left(a.scaled_magnitude(a.scale()), b.scale() + places + 1);
  const std::string den = detail::shift_left(b.scaled_magnitude(b.scale()), a.scale());
  auto [q, r] = detail::mag_divmod(num, den);
  (void)r;
  return ExactDecimal::from_parts(a.negative() != b.negative(), std::move(q), places + 1).round_to(places);
}

}  // namespace numeralkit

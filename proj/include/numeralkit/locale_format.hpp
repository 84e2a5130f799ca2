#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "numeralkit/decimal.hpp"
#include "numeralkit/error.hpp"
#include "numeralkit/utf8.hpp"

namespace numeralkit {

enum class FormatId : std::uint8_t { F1, F2, F3, F4, F5, F6 };

inline constexpr std::size_t kFormatCount = 6;

enum class GroupingPattern : std::uint8_t {
  Uniform3,     // 1,234,567
  Indian3_2_2,  // 12,34,567
};

struct FormatSpec {
  FormatId format;
  char32_t decimal_marker;
  char32_t grouping_separator;
  GroupingPattern pattern;
};

inline constexpr char32_t kThinSpace = 0x2009;

inline constexpr std::array<FormatSpec, kFormatCount> kFormats = {{
    {FormatId::F1, U'.', U',', GroupingPattern::Uniform3},
    {FormatId::F2, U',', U'.', GroupingPattern::Uniform3},
    {FormatId::F3, U',', kThinSpace, GroupingPattern::Uniform3},
    {FormatId::F4, U'.', kThinSpace, GroupingPattern::Uniform3},
    {FormatId::F5, U',', U'\'', GroupingPattern::Uniform3},
    {FormatId::F6, U'.', U',', GroupingPattern::Indian3_2_2},
}};

inline constexpr std::array<FormatId, kFormatCount> all_formats() {
  return {FormatId::F1, FormatId::F2, FormatId::F3, FormatId::F4, FormatId::F5, FormatId::F6};
}

inline const FormatSpec& format_spec(FormatId f) { return kFormats[static_cast<std::size_t>(f)]; }

inline std::string_view format_name(FormatId f) {
  static constexpr std::string_view kNames[] = {"F1", "F2", "F3", "F4", "F5", "F6"};
  return kNames[static_cast<std::size_t>(f)];
}

inline std::ostream& operator<<(std::ostream& os, FormatId f) { return os << format_name(f); }

inline FormatId parse_format_id(std::string_view name) {
  if (name.size() == 2 && (name[0] == 'F' || name[0] == 'f') && name[1] >= '1' && name[1] <= '6')
    return static_cast<FormatId>(name[1] - '1');
  throw Error(ErrorKind::UnknownName, "unknown format '" + std::string(name) + "' (expected F1..F6)");
}

/// Strict accepts exactly the emitted separators. Lenient additionally takes
/// U+202F / U+00A0 for the thin space and U+2019 for the apostrophe.
enum class ParseMode : std::uint8_t { Strict, Lenient };

namespace detail {

inline bool separator_matches(char32_t cp, char32_t sep, ParseMode mode) {
  if (cp == sep) return true;
  if (mode != ParseMode::Lenient) return false;
  if (sep == kThinSpace) return cp == 0x202F || cp == 0x00A0;
  if (sep == U'\'') return cp == 0x2019;
  return false;
}

// Group sizes from the left for an integer part of `n` digits.
inline std::vector<std::size_t> group_sizes(std::size_t n, GroupingPattern pattern) {
  std::vector<std::size_t> sizes;
  if (n <= 3) return {n};
  std::size_t rest = n - 3;
  const std::size_t step = pattern == GroupingPattern::Uniform3 ? 3 : 2;
  const std::size_t head = rest % step == 0 ? step : rest % step;
  sizes.push_back(head);
  for (rest -= head; rest > 0; rest -= step) sizes.push_back(step);
  sizes.push_back(3);
  return sizes;
}

inline bool legal_groups(const std::vector<std::size_t>& groups, GroupingPattern pattern) {
  if (groups.size() < 2) return true;
  if (groups.back() != 3) return false;
  const std::size_t inner = pattern == GroupingPattern::Uniform3 ? 3 : 2;
  if (groups.front() < 1 || groups.front() > inner) return false;
  for (std::size_t i = 1; i + 1 < groups.size(); ++i)
    if (groups[i] != inner) return false;
  return true;
}

}  // namespace detail

/// Groups the integer part per the format's pattern; fraction digits stay
/// ungrouped. Numbers of three or fewer integer digits get no separator.
inline std::string render(const ExactDecimal& value, FormatId fmt) {
  const auto& spec = format_spec(fmt);
  const std::string ip = value.integer_part();
  std::string out;
  if (value.negative()) out.push_back('-');
  std::size_t pos = 0;
  bool first = true;
  for (std::size_t size : detail::group_sizes(ip.size(), spec.pattern)) {
    if (!first) utf8::append(out, spec.grouping_separator);
    out.append(ip, pos, size);
    pos += size;
    first = false;
  }
  if (value.scale() > 0) {
    utf8::append(out, spec.decimal_marker);
    out += value.fraction_part();
  }
  return out;
}

/// Strict inverse of render. An ungrouped integer part is accepted under
/// every format; a grouped one must match the pattern exactly.
inline ExactDecimal parse(std::string_view text, FormatId fmt, ParseMode mode = ParseMode::Strict) {
  const auto& spec = format_spec(fmt);
  const std::u32string s = utf8::decode(text);
  auto malformed = [&](const char* why) {
    return Error(ErrorKind::MalformedForFormat,
                 std::string(why) + ": '" + std::string(text) + "' under " + std::string(format_name(fmt)));
  };
  if (s.empty()) throw malformed("empty text");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == U'-') {
    neg = true;
    ++i;
  }
  std::string digits;
  std::vector<std::size_t> groups{0};
  bool grouped = false;
  int scale = -1;
  for (; i < s.size(); ++i) {
    const char32_t cp = s[i];
    if (cp >= U'0' && cp <= U'9') {
      digits.push_back(static_cast<char>(cp));
      if (scale >= 0)
        ++scale;
      else
        ++groups.back();
    } else if (cp == spec.decimal_marker) {
      if (scale >= 0) throw malformed("multiple decimal markers");
      if (groups.back() == 0) throw malformed("decimal marker without preceding digits");
      scale = 0;
    } else if (detail::separator_matches(cp, spec.grouping_separator, mode)) {
      if (scale >= 0) throw malformed("grouping separator in fraction");
      if (groups.back() == 0) throw malformed("empty group");
      groups.push_back(0);
      grouped = true;
    } else {
      throw malformed("character not allowed");
    }
  }
  if (digits.empty() || (groups.back() == 0 && scale < 0)) throw malformed("missing digits");
  if (scale == 0) throw malformed("empty fraction");
  if (grouped && !detail::legal_groups(groups, spec.pattern)) throw malformed("illegal group sizes");
  return ExactDecimal::from_parts(neg, std::move(digits), std::max(scale, 0));
}

/// Every format under which `text` parses strictly, in F1..F6 order.
inline std::vector<FormatId> classify(std::string_view text) {
  std::vector<FormatId> out;
  for (FormatId f : all_formats()) {
    try {
      (void)parse(text, f);
      out.push_back(f);
    } catch (const Error&) {
    }
  }
  return out;
}

/// Sentence naming the marker and separator, used by hint prompts.
inline std::string format_hint(FormatId fmt) {
  const auto& spec = format_spec(fmt);
  return "The decimal marker used is '" + utf8::encode(spec.decimal_marker) + "' and the grouping separator is '" +
         utf8::encode(spec.grouping_separator) + "'.";
}

}  // namespace numeralkit

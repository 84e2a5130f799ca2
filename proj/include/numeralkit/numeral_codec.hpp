#pragma once

#include <bitset>
#include <cstdint>
#include <string>
#include <string_view>

#include "numeralkit/decimal.hpp"
#include "numeralkit/error.hpp"
#include "numeralkit/script_registry.hpp"
#include "numeralkit/utf8.hpp"

namespace numeralkit {

/// UTF-8 numeral text together with the script it claims to be written in.
struct NumeralString {
  std::string text;
  ScriptId script = ScriptId::HinduArabic;
  friend bool operator==(const NumeralString&, const NumeralString&) = default;
};

namespace detail {

inline constexpr std::int64_t kChineseLimit = 1'000'000'000'000;  // 10^12

inline bool is_chinese_numeral_glyph(char32_t cp) {
  if (chinese_multiplier_value(cp) != 0) return true;
  const auto sd = script_of_codepoint(cp);
  return sd && sd->script == ScriptId::ChineseSimplified;
}

// One four-digit section (0 < v < 10^4). `leading` drops the 一 of 一十.
inline void append_chinese_section(std::u32string& out, int v, bool leading) {
  const auto& zh = chinese_table();
  static constexpr int kPow[4] = {1000, 100, 10, 1};
  static constexpr char32_t kMul[4] = {U'千', U'百', U'十', 0};
  bool emitted = false;
  bool gap = false;
  for (int i = 0; i < 4; ++i) {
    const int d = (v / kPow[i]) % 10;
    if (d == 0) {
      if (emitted) gap = true;
      continue;
    }
    if (gap) {
      out.push_back(zh.zero_alternate);
      gap = false;
    }
    const bool bare_ten = leading && !emitted && i == 2 && d == 1;
    if (!bare_ten) out.push_back(zh.digits[d]);
    if (kMul[i] != 0) out.push_back(kMul[i]);
    emitted = true;
  }
}

inline std::u32string render_chinese_integer(std::int64_t n) {
  const auto& zh = chinese_table();
  if (n == 0) return std::u32string(1, zh.digits[0]);
  const int groups[3] = {static_cast<int>(n / 100000000), static_cast<int>((n / 10000) % 10000),
                         static_cast<int>(n % 10000)};
  static constexpr char32_t kUnit[3] = {U'亿', U'万', 0};
  std::u32string out;
  bool emitted = false;
  bool pending_zero = false;
  for (int g = 0; g < 3; ++g) {
    const int v = groups[g];
    if (v == 0) {
      if (emitted) pending_zero = true;
      continue;
    }
    if (emitted && (pending_zero || v < 1000)) out.push_back(zh.zero_alternate);
    pending_zero = false;
    append_chinese_section(out, v, !emitted);
    if (kUnit[g] != 0) out.push_back(kUnit[g]);
    emitted = true;
  }
  return out;
}

// Structural parse of a compositional integer; the caller checks that the
// text is the canonical spelling of the value it yields.
inline std::int64_t parse_chinese_integer_value(std::u32string_view s) {
  const auto& zh = chinese_table();
  auto malformed = [&](const char* why) {
    return Error(ErrorKind::MalformedNumeral, std::string(why) + " in '" + utf8::encode(s) + "'");
  };
  if (s.empty()) throw malformed("empty integer part");
  if (s.size() == 1 && (s[0] == zh.digits[0] || s[0] == zh.zero_alternate)) return 0;

  enum class Tok { Start, Digit, Zero, Small, Big };
  Tok last = Tok::Start;
  std::int64_t total = 0;
  std::int64_t section = 0;
  int pending = -1;
  std::int64_t last_small = 10000;
  bool seen_wan = false;
  bool seen_yi = false;

  for (char32_t cp : s) {
    const auto sd = script_of_codepoint(cp);
    const std::int64_t mult = chinese_multiplier_value(cp);
    if (sd && sd->script == ScriptId::ChineseSimplified) {
      if (sd->value == 0) {
        if (last == Tok::Start) throw malformed("leading zero");
        if (last == Tok::Zero) throw malformed("repeated zero");
        if (last == Tok::Digit) throw malformed("digit followed by zero");
        last = Tok::Zero;
      } else {
        if (last == Tok::Digit) throw malformed("consecutive digits");
        pending = sd->value;
        last = Tok::Digit;
      }
    } else if (mult >= 10 && mult <= 1000) {
      if (last == Tok::Zero) throw malformed("zero before multiplier");
      if (mult >= last_small) throw malformed("multiplier ordering violated");
      int d = pending;
      if (d == -1) {
        if (mult != 10 || last == Tok::Small) throw malformed("multiplier without digit");
        d = 1;
      }
      section += d * mult;
      last_small = mult;
      pending = -1;
      last = Tok::Small;
    } else if (mult == 10000 || mult == 100000000) {
      if (last == Tok::Zero) throw malformed("zero before multiplier");
      if (pending != -1) section += pending;
      pending = -1;
      if (section == 0) throw malformed("empty group");
      if (mult == 100000000) {
        if (seen_yi || seen_wan) throw malformed("multiplier ordering violated");
        seen_yi = true;
      } else {
        if (seen_wan) throw malformed("multiplier ordering violated");
        seen_wan = true;
      }
      total += section * mult;
      section = 0;
      last_small = 10000;
      last = Tok::Big;
    } else {
      throw malformed("glyph not in claimed script");
    }
  }
  if (last == Tok::Zero) throw malformed("trailing zero");
  if (pending != -1) section += pending;
  return total + section;
}

// Spelling variants accepted on parse: 〇 for 零 and 一十 for 十.
inline std::u32string normalize_chinese_spelling(std::u32string s) {
  const auto& zh = chinese_table();
  std::u32string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    char32_t c = s[i] == zh.digits[0] ? zh.zero_alternate : s[i];
    if (c == zh.digits[1] && i + 1 < s.size() && s[i + 1] == U'十') continue;
    out.push_back(c);
  }
  return out;
}

inline std::int64_t parse_chinese_integer(std::u32string_view s) {
  const std::int64_t v = parse_chinese_integer_value(s);
  if (v >= kChineseLimit) throw Error(ErrorKind::MalformedNumeral, "value exceeds 10^12: '" + utf8::encode(s) + "'");
  const auto canonical = render_chinese_integer(v);
  if (s.size() > 1 && normalize_chinese_spelling(std::u32string(s)) != normalize_chinese_spelling(canonical))
    throw Error(ErrorKind::MalformedNumeral,
                "non-canonical spelling '" + utf8::encode(s) + "' (expected '" + utf8::encode(canonical) + "')");
  return v;
}

inline ExactDecimal parse_chinese(std::u32string_view s) {
  const auto& zh = chinese_table();
  bool neg = false;
  if (!s.empty() && s.front() == zh.minus) {
    neg = true;
    s.remove_prefix(1);
  }
  const auto point = s.find(zh.decimal_point);
  const std::int64_t integer = parse_chinese_integer(s.substr(0, point));
  std::string digits = std::to_string(integer);
  int scale = 0;
  if (point != std::u32string_view::npos) {
    const auto frac = s.substr(point + 1);
    if (frac.empty()) throw Error(ErrorKind::MalformedNumeral, "empty fraction after decimal point");
    for (char32_t cp : frac) {
      const auto sd = script_of_codepoint(cp);
      if (!sd || sd->script != ScriptId::ChineseSimplified)
        throw Error(ErrorKind::MalformedNumeral, "fraction glyph is not a Chinese digit");
      digits.push_back(static_cast<char>('0' + sd->value));
      ++scale;
    }
  }
  return ExactDecimal::from_parts(neg, std::move(digits), scale);
}

inline ExactDecimal parse_positional(std::u32string_view s, ScriptId script) {
  const char32_t base = digit_map(script).glyphs[0];
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && s[i] == U'-') {
    neg = true;
    ++i;
  }
  std::string digits;
  int scale = -1;
  for (; i < s.size(); ++i) {
    const char32_t cp = s[i];
    if (cp >= base && cp < base + 10) {
      digits.push_back(static_cast<char>('0' + (cp - base)));
      if (scale >= 0) ++scale;
    } else if (cp == U'.' && scale < 0 && !digits.empty()) {
      scale = 0;
    } else {
      throw Error(ErrorKind::MalformedNumeral, "unexpected character in '" + utf8::encode(s) + "'");
    }
  }
  if (digits.empty() || scale == 0) throw Error(ErrorKind::MalformedNumeral, "missing digits in '" + utf8::encode(s) + "'");
  return ExactDecimal::from_parts(neg, std::move(digits), std::max(scale, 0));
}

inline std::bitset<kScriptCount> scripts_present(std::u32string_view s) {
  std::bitset<kScriptCount> seen;
  for (char32_t cp : s) {
    if (const auto sd = script_of_codepoint(cp))
      seen.set(static_cast<std::size_t>(sd->script));
    else if (chinese_multiplier_value(cp) != 0)
      seen.set(static_cast<std::size_t>(ScriptId::ChineseSimplified));
  }
  return seen;
}

}  // namespace detail

/// Renders a value in the target script. Positional scripts substitute glyphs
/// digit by digit and keep '.'; Chinese uses myriad composition.
inline NumeralString to_script(const ExactDecimal& value, ScriptId target) {
  NumeralString out{{}, target};
  if (target == ScriptId::HinduArabic) {
    out.text = value.to_string();
    return out;
  }
  if (is_positional(target)) {
    const auto glyphs = digit_map(target).glyphs;
    std::u32string s;
    if (value.negative()) s.push_back(U'-');
    const std::string ip = value.integer_part();
    for (char c : ip) s.push_back(glyphs[c - '0']);
    if (value.scale() > 0) {
      s.push_back(U'.');
      for (char c : value.fraction_part()) s.push_back(glyphs[c - '0']);
    }
    out.text = utf8::encode(s);
    return out;
  }
  const std::string ip = value.integer_part();
  if (ip.size() > 12) throw Error(ErrorKind::UnsupportedValue, "Chinese rendering needs |value| < 10^12, got " + value.to_string());
  const auto& zh = chinese_table();
  std::u32string s;
  if (value.negative()) s.push_back(zh.minus);
  s += detail::render_chinese_integer(std::stoll(ip));
  if (value.scale() > 0) {
    s.push_back(zh.decimal_point);
    for (char c : value.fraction_part()) s.push_back(zh.digits[c - '0']);
  }
  out.text = utf8::encode(s);
  return out;
}

/// Inverse of to_script on its range. Fails with MixedScript when digits of
/// several scripts appear, MalformedNumeral for anything else off-grammar.
inline ExactDecimal from_script(const NumeralString& numeral) {
  const std::u32string s = utf8::decode(numeral.text);
  if (s.empty()) throw Error(ErrorKind::MalformedNumeral, "empty numeral");
  const auto present = detail::scripts_present(s);
  if (present.count() > 1) throw Error(ErrorKind::MixedScript, "digits from several scripts in '" + numeral.text + "'");
  if (present.count() == 1 && !present.test(static_cast<std::size_t>(numeral.script)))
    throw Error(ErrorKind::MalformedNumeral,
                "glyphs of '" + numeral.text + "' are not " + std::string(script_name(numeral.script)));
  if (numeral.script == ScriptId::ChineseSimplified) return detail::parse_chinese(s);
  return detail::parse_positional(s, numeral.script);
}

/// The unique script owning every numeral glyph in `text`; other characters
/// (operators, words, spaces) are ignored.
inline ScriptId identify_script(std::string_view text) {
  const auto present = detail::scripts_present(utf8::decode(text));
  if (present.none()) throw Error(ErrorKind::NoDigits, "no numeral glyphs in '" + std::string(text) + "'");
  if (present.count() > 1) throw Error(ErrorKind::MixedScript, "digits from several scripts in '" + std::string(text) + "'");
  for (std::size_t i = 0; i < kScriptCount; ++i)
    if (present.test(i)) return static_cast<ScriptId>(i);
  return ScriptId::HinduArabic;  // unreachable
}

/// Parse without a claimed script: identify first, then decode.
inline ExactDecimal from_script(std::string_view text) {
  return from_script(NumeralString{std::string(text), identify_script(text)});
}

inline NumeralString transliterate(const NumeralString& numeral, ScriptId target) {
  return to_script(from_script(numeral), target);
}

}  // namespace numeralkit

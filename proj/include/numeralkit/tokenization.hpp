#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "numeralkit/error.hpp"
#include "numeralkit/script_registry.hpp"
#include "numeralkit/utf8.hpp"

namespace numeralkit {

struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio make(std::int64_t n, std::int64_t d) {
    const std::int64_t g = std::gcd(n, d);
    return g ? Ratio{n / g, d / g} : Ratio{0, 1};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.to_string(); }

enum class TokenizerKind : std::uint8_t { Chunk3, Digit1, Table };

/// How a rendered expression splits into tokens. Only digit-bearing tokens
/// matter for the ratio; any registered digit glyph counts as a digit.
class TokenizationScheme {
 public:
  static TokenizationScheme chunk3() { return TokenizationScheme(TokenizerKind::Chunk3, "chunk3"); }
  static TokenizationScheme digit1() { return TokenizationScheme(TokenizerKind::Digit1, "digit1"); }

  /// Tab-separated `expression <TAB> digit-bearing token count` lines.
  static TokenizationScheme table(std::istream& in, std::string name = "table") {
    TokenizationScheme s(TokenizerKind::Table, std::move(name));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const auto tab = line.rfind('\t');
      if (tab == std::string::npos)
        throw Error(ErrorKind::BadRecord, "token table line " + std::to_string(lineno) + ": expected two fields");
      std::int64_t count = 0;
      try {
        std::size_t used = 0;
        count = std::stoll(line.substr(tab + 1), &used);
        if (used != line.size() - tab - 1 || count < 1) throw std::invalid_argument("count");
      } catch (const std::exception&) {
        throw Error(ErrorKind::BadRecord, "token table line " + std::to_string(lineno) + ": bad token count");
      }
      s.table_[line.substr(0, tab)] = count;
    }
    return s;
  }

  static TokenizationScheme table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open token table '" + path + "'");
    return table(in, path);
  }

  static TokenizationScheme parse(std::string_view spec) {
    if (spec == "chunk3") return chunk3();
    if (spec == "digit1") return digit1();
    if (spec.rfind("table:", 0) == 0) return table_file(std::string(spec.substr(6)));
    throw Error(ErrorKind::UnknownName, "unknown tokenization '" + std::string(spec) + "' (chunk3, digit1, table:<path>)");
  }

  TokenizerKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// Number of tokens containing at least one digit.
  std::int64_t digit_tokens(std::string_view text) const {
    if (kind_ == TokenizerKind::Table) {
      auto it = table_.find(std::string(text));
      if (it == table_.end()) throw Error(ErrorKind::NoTableEntry, "no token count for '" + std::string(text) + "'");
      return it->second;
    }
    std::int64_t tokens = 0, run = 0;
    auto flush = [&] {
      tokens += kind_ == TokenizerKind::Digit1 ? run : (run + 2) / 3;
      run = 0;
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (is_digit_glyph(utf8::next(text, pos)))
        ++run;
      else
        flush();
    }
    flush();
    return tokens;
  }

  static bool is_digit_glyph(char32_t cp) { return script_of_codepoint(cp).has_value(); }

 private:
  TokenizationScheme(TokenizerKind k, std::string name) : kind_(k), name_(std::move(name)) {}
  TokenizerKind kind_;
  std::string name_;
  std::map<std::string, std::int64_t> table_;
};

inline std::int64_t count_digits(std::string_view text) {
  std::int64_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size())
    if (TokenizationScheme::is_digit_glyph(utf8::next(text, pos))) ++n;
  return n;
}

/// Digit-bearing tokens over digit characters.
inline Ratio tokens_per_digit(std::string_view expression, const TokenizationScheme& scheme) {
  const std::int64_t digits = count_digits(expression);
  if (digits == 0) throw Error(ErrorKind::NoDigits, "no digits in '" + std::string(expression) + "'");
  return Ratio::make(scheme.digit_tokens(expression), digits);
}

}  // namespace numeralkit

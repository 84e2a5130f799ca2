#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "numeralkit/error.hpp"
#include "numeralkit/utf8.hpp"

namespace numeralkit {

enum class ScriptId : std::uint8_t {
  HinduArabic,
  PersoArabic,
  Devanagari,
  Bengali,
  Khmer,
  Gujarati,
  Odia,
  Malayalam,
  Myanmar,
  Telugu,
  Thai,
  ChineseSimplified,
  Kannada,
  Nko,
  Tamil,
  Lao,
  OlChiki,
  Adlam,
  Balinese,
  Javanese,
  Osmanya,
};

inline constexpr std::size_t kScriptCount = 21;

struct DigitMap {
  ScriptId script;
  std::array<char32_t, 10> glyphs;  // glyph for value 0 .. value 9
};

struct ScriptMeta {
  ScriptId script;
  std::string_view id;            // stable identifier used in files and flags
  std::string_view display_name;  // what a script-identification answer names
  std::string_view language;      // prompt language
  double corpus_share;            // fraction of digit occurrences, informational only
};

/// Simplified Chinese numeral glyphs beyond the ten digits.
struct ChineseNumeralTable {
  std::array<char32_t, 10> digits;
  char32_t zero_alternate;
  struct Multiplier {
    char32_t glyph;
    std::int64_t value;
  };
  std::array<Multiplier, 5> multipliers;  // strictly increasing values
  char32_t decimal_point;
  char32_t minus;
};

namespace registry_data {

// Code points per the Unicode block of each script. Every script except
// Chinese is a contiguous run base+0 .. base+9.
inline constexpr std::array<char32_t, kScriptCount> kPositionalBase = {
    0x0030,   // HinduArabic
    0x06F0,   // PersoArabic (Extended Arabic-Indic)
    0x0966,   // Devanagari
    0x09E6,   // Bengali
    0x17E0,   // Khmer
    0x0AE6,   // Gujarati
    0x0B66,   // Odia
    0x0D66,   // Malayalam
    0x1040,   // Myanmar
    0x0C66,   // Telugu
    0x0E50,   // Thai
    0,        // ChineseSimplified: not positional
    0x0CE6,   // Kannada
    0x07C0,   // Nko
    0x0BE6,   // Tamil
    0x0ED0,   // Lao
    0x1C50,   // OlChiki
    0x1E950,  // Adlam
    0x1B50,   // Balinese
    0xA9D0,   // Javanese
    0x104A0,  // Osmanya
};

inline constexpr ChineseNumeralTable kChinese{
    {U'〇', U'一', U'二', U'三', U'四', U'五', U'六', U'七', U'八', U'九'},
    U'零',
    {{{U'十', 10}, {U'百', 100}, {U'千', 1000}, {U'万', 10000}, {U'亿', 100000000}}},
    U'点',
    U'负',
};

// Shares are Table-1 style percentages divided by 100.
inline constexpr std::array<ScriptMeta, kScriptCount> kMeta = {{
    {ScriptId::HinduArabic, "HinduArabic", "Hindu-Arabic", "English", 0.724},
    {ScriptId::PersoArabic, "PersoArabic", "Perso-Arabic", "Persian", 0.122},
    {ScriptId::Devanagari, "Devanagari", "Devanagari", "Hindi", 0.091},
    {ScriptId::Bengali, "Bengali", "Bengali", "Bengali", 0.014},
    {ScriptId::Khmer, "Khmer", "Khmer", "Khmer", 0.007},
    {ScriptId::Gujarati, "Gujarati", "Gujarati", "Gujarati", 0.005},
    {ScriptId::Odia, "Odia", "Odia", "Odiya", 0.005},
    {ScriptId::Malayalam, "Malayalam", "Malayalam", "Malayalam", 0.004},
    {ScriptId::Myanmar, "Myanmar", "Myanmar", "Burmese", 0.004},
    {ScriptId::Telugu, "Telugu", "Telugu", "Telugu", 0.004},
    {ScriptId::Thai, "Thai", "Thai", "Thai", 0.004},
    {ScriptId::ChineseSimplified, "ChineseSimplified", "Chinese", "Mandarin", 0.003},
    {ScriptId::Kannada, "Kannada", "Kannada", "Kannada", 0.002},
    {ScriptId::Nko, "Nko", "N'Ko", "Maninka", 0.001},
    {ScriptId::Tamil, "Tamil", "Tamil", "Tamil", 0.001},
    {ScriptId::Lao, "Lao", "Lao", "Lao", 2e-5},
    {ScriptId::OlChiki, "OlChiki", "Ol Chiki", "Santali", 6e-6},
    {ScriptId::Adlam, "Adlam", "Adlam", "Fulani", 1e-6},
    {ScriptId::Balinese, "Balinese", "Balinese", "Balinese", 0.0},
    {ScriptId::Javanese, "Javanese", "Javanese", "Javanese", 0.0},
    {ScriptId::Osmanya, "Osmanya", "Osmanya", "Somali", 0.0},
}};

}  // namespace registry_data

inline constexpr std::array<ScriptId, kScriptCount> all_scripts() {
  std::array<ScriptId, kScriptCount> out{};
  for (std::size_t i = 0; i < kScriptCount; ++i) out[i] = static_cast<ScriptId>(i);
  return out;
}

constexpr bool is_positional(ScriptId s) { return s != ScriptId::ChineseSimplified; }

inline const ChineseNumeralTable& chinese_table() { return registry_data::kChinese; }

inline const ScriptMeta& script_meta(ScriptId s) { return registry_data::kMeta[static_cast<std::size_t>(s)]; }

inline DigitMap digit_map(ScriptId s) {
  DigitMap m{s, {}};
  if (s == ScriptId::ChineseSimplified) {
    m.glyphs = registry_data::kChinese.digits;
  } else {
    const char32_t base = registry_data::kPositionalBase[static_cast<std::size_t>(s)];
    for (int v = 0; v < 10; ++v) m.glyphs[v] = base + static_cast<char32_t>(v);
  }
  return m;
}

inline std::string_view script_name(ScriptId s) { return script_meta(s).id; }
inline std::string_view display_name(ScriptId s) { return script_meta(s).display_name; }
inline std::string_view language_for(ScriptId s) { return script_meta(s).language; }

inline std::ostream& operator<<(std::ostream& os, ScriptId s) { return os << script_name(s); }

struct ScriptDigit {
  ScriptId script;
  int value;
  friend bool operator==(const ScriptDigit&, const ScriptDigit&) = default;
};

/// Owning script and digit value of a registered digit glyph (零 included).
inline std::optional<ScriptDigit> script_of_codepoint(char32_t cp) {
  for (std::size_t i = 0; i < kScriptCount; ++i) {
    const char32_t base = registry_data::kPositionalBase[i];
    if (base != 0 && cp >= base && cp < base + 10)
      return ScriptDigit{static_cast<ScriptId>(i), static_cast<int>(cp - base)};
  }
  const auto& zh = registry_data::kChinese;
  for (int v = 0; v < 10; ++v)
    if (zh.digits[v] == cp) return ScriptDigit{ScriptId::ChineseSimplified, v};
  if (cp == zh.zero_alternate) return ScriptDigit{ScriptId::ChineseSimplified, 0};
  return std::nullopt;
}

/// Value of a Chinese multiplier glyph (十百千万亿), 0 if not one.
inline std::int64_t chinese_multiplier_value(char32_t cp) {
  for (const auto& m : registry_data::kChinese.multipliers)
    if (m.glyph == cp) return m.value;
  return 0;
}

namespace detail {

inline std::string fold_name(std::string_view s) {
  std::string out;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace detail

/// Resolves an identifier, display name, or prompt-language name, ignoring
/// case, spaces and punctuation ("hindu-arabic", "NKo", "Hindi" all work).
inline std::optional<ScriptId> find_script(std::string_view name) {
  const std::string key = detail::fold_name(name);
  if (key.empty()) return std::nullopt;
  for (const auto& m : registry_data::kMeta)
    if (detail::fold_name(m.id) == key || detail::fold_name(m.display_name) == key) return m.script;
  for (const auto& m : registry_data::kMeta)
    if (detail::fold_name(m.language) == key) return m.script;
  // common aliases
  if (key == "chinesesimplified" || key == "simplifiedchinese" || key == "chinese") return ScriptId::ChineseSimplified;
  if (key == "oriya" || key == "odiya") return ScriptId::Odia;
  if (key == "arabic" || key == "persoarabic" || key == "farsi") return ScriptId::PersoArabic;
  if (key == "western" || key == "latin" || key == "ascii") return ScriptId::HinduArabic;
  return std::nullopt;
}

inline ScriptId parse_script(std::string_view name) {
  if (auto s = find_script(name)) return *s;
  throw Error(ErrorKind::UnknownName, "unknown script '" + std::string(name) + "'");
}

/// Tab-separated audit table: id, ten glyphs, language, share.
inline void write_registry_table(std::ostream& os) {
  os << "script\tglyphs\tlanguage\tcorpus_share\n";
  for (ScriptId s : all_scripts()) {
    const auto m = digit_map(s);
    std::string glyphs;
    for (char32_t g : m.glyphs) utf8::append(glyphs, g);
    os << script_name(s) << '\t' << glyphs << '\t' << language_for(s) << '\t' << script_meta(s).corpus_share
       << '\n';
  }
}

}  // namespace numeralkit

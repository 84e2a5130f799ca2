#pragma once

#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>

#include "numeralkit/arithmetic.hpp"
#include "numeralkit/error.hpp"
#include "numeralkit/script_registry.hpp"

namespace numeralkit {

enum class PromptStrategy : std::uint8_t {
  // script track
  DigitsOnlyNative,
  ExprOnlyNative,
  ExprPromptNative,
  ExprPromptNativeMapping,
  EnglishOperator,
  // format track
  AnyOutput,
  FormattedOutput,
  FormattedOutputHint,
  FormattedOutputFewshot,
};

inline constexpr std::array<PromptStrategy, 5> kScriptStrategies = {
    PromptStrategy::DigitsOnlyNative, PromptStrategy::ExprOnlyNative, PromptStrategy::ExprPromptNative,
    PromptStrategy::ExprPromptNativeMapping, PromptStrategy::EnglishOperator};

inline constexpr std::array<PromptStrategy, 4> kFormatStrategies = {
    PromptStrategy::AnyOutput, PromptStrategy::FormattedOutput, PromptStrategy::FormattedOutputHint,
    PromptStrategy::FormattedOutputFewshot};

inline std::string_view strategy_name(PromptStrategy s) {
  static constexpr std::string_view kNames[] = {
      "DigitsOnlyNative", "ExprOnlyNative",  "ExprPromptNative",    "ExprPromptNativeMapping", "EnglishOperator",
      "AnyOutput",        "FormattedOutput", "FormattedOutputHint", "FormattedOutputFewshot"};
  return kNames[static_cast<std::size_t>(s)];
}

inline std::ostream& operator<<(std::ostream& os, PromptStrategy s) { return os << strategy_name(s); }

constexpr bool is_script_strategy(PromptStrategy s) { return s <= PromptStrategy::EnglishOperator; }
constexpr bool is_format_strategy(PromptStrategy s) { return !is_script_strategy(s); }

inline PromptStrategy parse_strategy(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(PromptStrategy::FormattedOutputFewshot); ++i) {
    const auto s = static_cast<PromptStrategy>(i);
    if (strategy_name(s) == name) return s;
  }
  throw Error(ErrorKind::UnknownName, "unknown strategy '" + std::string(name) + "'");
}

/// Whether the strategy words the operator / rounding sentence in the
/// script's language.
constexpr bool native_operator(PromptStrategy s) {
  return s == PromptStrategy::ExprOnlyNative || s == PromptStrategy::ExprPromptNative ||
         s == PromptStrategy::ExprPromptNativeMapping;
}
constexpr bool native_instruction(PromptStrategy s) {
  return s == PromptStrategy::ExprPromptNative || s == PromptStrategy::ExprPromptNativeMapping;
}

enum class CatalogSlot : std::uint8_t { OpAdd, OpSub, OpMul, OpDiv, RoundInteger, Round3dp, Joiner };

inline std::string_view slot_name(CatalogSlot s) {
  static constexpr std::string_view kNames[] = {"op_add",        "op_sub",    "op_mul", "op_div",
                                                "round_integer", "round_3dp", "joiner"};
  return kNames[static_cast<std::size_t>(s)];
}

inline CatalogSlot parse_slot(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(CatalogSlot::Joiner); ++i)
    if (slot_name(static_cast<CatalogSlot>(i)) == name) return static_cast<CatalogSlot>(i);
  throw Error(ErrorKind::UnknownName, "unknown catalog slot '" + std::string(name) + "'");
}

inline CatalogSlot op_slot(Operation op) { return static_cast<CatalogSlot>(static_cast<int>(op)); }
inline CatalogSlot round_slot(RoundingDirective d) {
  return d.places() == 0 ? CatalogSlot::RoundInteger : CatalogSlot::Round3dp;
}

/// Operator words and rounding sentences keyed by (script, strategy, slot).
/// A strategy-less entry applies to every strategy of that script. English
/// (Hindu-Arabic) and Mandarin (Chinese) are built in; everything else comes
/// from a tab-separated file:
///
///   script <TAB> strategy-or-* <TAB> slot <TAB> text
class PromptCatalog {
 public:
  PromptCatalog() {
    const auto ha = ScriptId::HinduArabic;
    for (Operation op : kOperations) set(ha, std::nullopt, op_slot(op), std::string(operator_word(op)));
    set(ha, std::nullopt, CatalogSlot::RoundInteger, std::string(RoundingDirective::to_integer().instruction()));
    set(ha, std::nullopt, CatalogSlot::Round3dp, std::string(RoundingDirective::to_three_places().instruction()));
    set(ha, std::nullopt, CatalogSlot::Joiner, " ");

    const auto zh = ScriptId::ChineseSimplified;
    set(zh, std::nullopt, CatalogSlot::OpAdd, "加");
    set(zh, std::nullopt, CatalogSlot::OpSub, "减");
    set(zh, std::nullopt, CatalogSlot::OpMul, "乘以");
    set(zh, std::nullopt, CatalogSlot::OpDiv, "除以");
    set(zh, std::nullopt, CatalogSlot::RoundInteger, "将答案四舍五入到整数。");
    set(zh, std::nullopt, CatalogSlot::Round3dp, "将答案四舍五入到小数点后三位。");
    set(zh, std::nullopt, CatalogSlot::Joiner, "");
  }

  void set(ScriptId script, std::optional<PromptStrategy> strategy, CatalogSlot slot, std::string text) {
    entries_[key(script, strategy, slot)] = std::move(text);
  }

  std::optional<std::string> find(ScriptId script, PromptStrategy strategy, CatalogSlot slot) const {
    if (auto it = entries_.find(key(script, strategy, slot)); it != entries_.end()) return it->second;
    if (auto it = entries_.find(key(script, std::nullopt, slot)); it != entries_.end()) return it->second;
    return std::nullopt;
  }

  std::string lookup(ScriptId script, PromptStrategy strategy, CatalogSlot slot) const {
    if (auto v = find(script, strategy, slot)) return *v;
    throw Error(ErrorKind::MissingCatalogEntry, "no catalog entry for (" + std::string(script_name(script)) + ", " +
                                                    std::string(strategy_name(strategy)) + ", " +
                                                    std::string(slot_name(slot)) + ")");
  }

  /// Joiner between operands and operator word; a single space when the
  /// catalog says nothing.
  std::string joiner(ScriptId script, PromptStrategy strategy) const {
    return find(script, strategy, CatalogSlot::Joiner).value_or(" ");
  }

  /// Merges entries from a TSV stream; later entries override earlier ones.
  void load(std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      std::array<std::string, 4> f;
      std::size_t start = 0;
      for (int i = 0; i < 4; ++i) {
        const std::size_t tab = i < 3 ? line.find('\t', start) : std::string::npos;
        if (i < 3 && tab == std::string::npos)
          throw Error(ErrorKind::BadRecord, "catalog line " + std::to_string(lineno) + ": expected 4 tab-separated fields");
        f[i] = line.substr(start, tab == std::string::npos ? std::string::npos : tab - start);
        start = tab + 1;
      }
      const ScriptId script = parse_script(f[0]);
      std::optional<PromptStrategy> strategy;
      if (f[1] != "*") strategy = parse_strategy(f[1]);
      set(script, strategy, parse_slot(f[2]), f[3]);
    }
  }

  void load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open catalog '" + path + "'");
    load(in);
  }

  std::size_t size() const { return entries_.size(); }

 private:
  using Key = std::tuple<int, int, int>;
  static Key key(ScriptId s, std::optional<PromptStrategy> st, CatalogSlot slot) {
    return {static_cast<int>(s), st ? static_cast<int>(*st) : -1, static_cast<int>(slot)};
  }
  std::map<Key, std::string> entries_;
};

}  // namespace numeralkit

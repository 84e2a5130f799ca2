#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "numeralkit/arithmetic.hpp"
#include "numeralkit/locale_format.hpp"
#include "numeralkit/numeral_codec.hpp"
#include "numeralkit/prompt_catalog.hpp"

namespace numeralkit {

struct GenerationConfig {
  std::uint64_t seed = 1;
  int cases_per_op = 84;
  int min_digits = 4;
  int max_digits = 8;
  double decimal_operand_probability = 0.5;
  int max_result_digits = 12;
};

/// Few-shot examples carry ids far above any generated id.
inline constexpr std::int64_t kFewshotIdBase = 1'000'000;

inline void validate(const GenerationConfig& cfg) {
  auto bad = [](const std::string& why) { return Error(ErrorKind::ConfigError, why); };
  if (cfg.cases_per_op < 1) throw bad("cases_per_op must be at least 1");
  if (static_cast<std::int64_t>(cfg.cases_per_op) * 4 > kFewshotIdBase)
    throw bad("cases_per_op too large: ids would reach the few-shot pool");
  if (cfg.min_digits < 1 || cfg.max_digits > 12 || cfg.min_digits > cfg.max_digits)
    throw bad("digit range must satisfy 1 <= min <= max <= 12");
  if (!(cfg.decimal_operand_probability >= 0.0 && cfg.decimal_operand_probability <= 1.0))
    throw bad("decimal_operand_probability must lie in [0, 1]");
  if (cfg.max_result_digits < 1) throw bad("max_result_digits must be at least 1");
}

namespace detail {

// Uniform draws written out by hand: the std distributions are not
// specified bit-for-bit, and suites must match across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline bool bernoulli(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

inline ExactDecimal draw_operand(std::mt19937_64& rng, const GenerationConfig& cfg) {
  const int n = uniform_int(rng, cfg.min_digits, cfg.max_digits);
  int frac = 0;
  if (n > 1 && bernoulli(rng, cfg.decimal_operand_probability)) frac = uniform_int(rng, 1, std::min(3, n - 1));
  std::string digits;
  digits.push_back(static_cast<char>('1' + uniform_below(rng, 9)));
  for (int i = 1; i < n; ++i) {
    if (frac > 0 && i == n - 1)
      digits.push_back(static_cast<char>('1' + uniform_below(rng, 9)));
    else
      digits.push_back(static_cast<char>('0' + uniform_below(rng, 10)));
  }
  return ExactDecimal::from_parts(false, std::move(digits), frac);
}

inline bool renders_in_every_format(const ExactDecimal& v) {
  for (FormatId f : all_formats()) {
    try {
      if (parse(render(v, f), f) != v) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Seeded expression cases, cases_per_op of each operation with ids
/// 1..4*cases_per_op. Subtraction orders operands so answers are nonnegative.
inline std::vector<ExpressionCase> generate_cases(const GenerationConfig& cfg) {
  validate(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::vector<ExpressionCase> out;
  out.reserve(static_cast<std::size_t>(cfg.cases_per_op) * 4);
  std::int64_t id = 1;
  for (Operation op : kOperations) {
    for (int k = 0; k < cfg.cases_per_op;) {
      ExactDecimal lhs = detail::draw_operand(rng, cfg);
      ExactDecimal rhs = detail::draw_operand(rng, cfg);
      if (op == Operation::Sub && compare(lhs, rhs) < 0) std::swap(lhs, rhs);
      RoundingDirective dir = RoundingDirective::to_integer();
      if (op == Operation::Div) {
        if (detail::bernoulli(rng, 0.5)) dir = RoundingDirective::to_three_places();
      } else if (lhs.scale() > 0 || rhs.scale() > 0) {
        dir = RoundingDirective::to_three_places();
      }
      const ExactDecimal exact = exact_result(lhs, op, rhs, dir);
      if (exact.significant_digits() > cfg.max_result_digits) continue;
      ExpressionCase c(id, lhs, op, rhs, dir);
      if (c.answer().significant_digits() > cfg.max_result_digits) continue;
      if (!detail::renders_in_every_format(lhs) || !detail::renders_in_every_format(rhs) ||
          !detail::renders_in_every_format(c.answer()))
        continue;
      out.push_back(std::move(c));
      ++id;
      ++k;
    }
  }
  return out;
}

/// The two worked examples shown by the few-shot strategy.
inline const std::vector<ExpressionCase>& fewshot_pool() {
  static const std::vector<ExpressionCase> pool = {
      ExpressionCase(kFewshotIdBase + 1, ExactDecimal::parse("4958.155"), Operation::Mul, ExactDecimal::parse("93.2"),
                     RoundingDirective::to_three_places()),
      ExpressionCase(kFewshotIdBase + 2, ExactDecimal::parse("9628240"), Operation::Div, ExactDecimal::parse("44847"),
                     RoundingDirective::to_three_places()),
  };
  return pool;
}

using Variant = std::variant<ScriptId, FormatId>;

inline std::string variant_name(const Variant& v) {
  if (const auto* s = std::get_if<ScriptId>(&v)) return std::string(script_name(*s));
  return std::string(format_name(std::get<FormatId>(v)));
}

inline Variant parse_variant(std::string_view name) {
  if (name.size() == 2 && (name[0] == 'F' || name[0] == 'f') && name[1] >= '1' && name[1] <= '6')
    return parse_format_id(name);
  return parse_script(name);
}

struct RenderedPrompt {
  std::int64_t case_id = 0;
  Variant variant = ScriptId::HinduArabic;
  PromptStrategy strategy = PromptStrategy::EnglishOperator;
  std::string system_text;
  std::string user_text;
  std::string expected_answer_text;
  ExactDecimal expected_answer_value;
  Operation op = Operation::Add;
  int total_digits = 0;
  RoundingDirective directive = RoundingDirective::to_integer();
  std::string expression;  // the operand/operator line alone

  friend bool operator==(const RenderedPrompt&, const RenderedPrompt&) = default;
};

namespace prompt_text {

inline constexpr std::string_view kBase =
    "Compute and respond ONLY with the answer. The output should be of the form: \"Answer: $ANSWER\" (without "
    "quotes) where $ANSWER is the answer to the problem.";
inline constexpr std::string_view kSameScript = " Ensure the answer is in the same script as the numbers in the question";
inline constexpr std::string_view kMapping =
    ", with the mapping between the script’s numerals and Latin numerals provided as reference";
inline constexpr std::string_view kSameFormat = " Ensure the answer has the same formatting as the numbers in the question";
inline constexpr std::string_view kHinted = " with decimal markers and grouping separators as mentioned";

}  // namespace prompt_text

inline std::string system_prompt(PromptStrategy s) {
  using namespace prompt_text;
  std::string out(kBase);
  switch (s) {
    case PromptStrategy::AnyOutput:
    case PromptStrategy::EnglishOperator: break;
    case PromptStrategy::DigitsOnlyNative:
    case PromptStrategy::ExprOnlyNative:
    case PromptStrategy::ExprPromptNative: (out += kSameScript) += '.'; break;
    case PromptStrategy::ExprPromptNativeMapping: ((out += kSameScript) += kMapping) += '.'; break;
    case PromptStrategy::FormattedOutput:
    case PromptStrategy::FormattedOutputFewshot: (out += kSameFormat) += '.'; break;
    case PromptStrategy::FormattedOutputHint: ((out += kSameFormat) += kHinted) += '.'; break;
  }
  return out;
}

/// "[०:0, १:1, …]"; Chinese also lists its multipliers.
inline std::string mapping_block(ScriptId script) {
  std::string out = "[";
  const auto m = digit_map(script);
  for (int v = 0; v < 10; ++v) {
    if (v) out += ", ";
    utf8::append(out, m.glyphs[v]);
    out += ":" + std::to_string(v);
  }
  if (script == ScriptId::ChineseSimplified)
    for (const auto& mul : chinese_table().multipliers) {
      out += ", ";
      utf8::append(out, mul.glyph);
      out += ":" + std::to_string(mul.value);
    }
  out += "]";
  return out;
}

inline std::string render_expression(const ExpressionCase& c, ScriptId script, PromptStrategy s,
                                     const PromptCatalog& catalog) {
  const std::string lhs = to_script(c.lhs(), script).text, rhs = to_script(c.rhs(), script).text;
  if (!native_operator(s)) return lhs + " " + std::string(operator_word(c.op())) + " " + rhs;
  const std::string word = catalog.lookup(script, s, op_slot(c.op()));
  const std::string j = catalog.joiner(script, s);
  return lhs + j + word + j + rhs;
}

inline std::string render_expression(const ExpressionCase& c, FormatId fmt) {
  return render(c.lhs(), fmt) + " " + std::string(operator_word(c.op())) + " " + render(c.rhs(), fmt);
}

/// Expected answer under the strategy's output contract.
inline std::string expected_text(const ExactDecimal& answer, const Variant& v, PromptStrategy s) {
  if (const auto* script = std::get_if<ScriptId>(&v)) return to_script(answer, *script).text;
  if (s == PromptStrategy::AnyOutput) return answer.to_string();
  return render(answer, std::get<FormatId>(v));
}

inline RenderedPrompt render_script_prompt(const ExpressionCase& c, ScriptId script, PromptStrategy s,
                                           const PromptCatalog& catalog) {
  if (!is_script_strategy(s))
    throw Error(ErrorKind::ConfigError, "strategy " + std::string(strategy_name(s)) + " belongs to the format track");
  RenderedPrompt p;
  p.case_id = c.id();
  p.variant = script;
  p.strategy = s;
  p.system_text = system_prompt(s);
  p.expression = render_expression(c, script, s, catalog);
  const std::string round = native_instruction(s) ? catalog.lookup(script, s, round_slot(c.directive()))
                                                  : std::string(c.directive().instruction());
  if (s == PromptStrategy::ExprPromptNativeMapping) p.user_text = mapping_block(script) + "\n";
  p.user_text += round + "\n" + p.expression;
  p.expected_answer_value = c.answer();
  p.expected_answer_text = expected_text(c.answer(), p.variant, s);
  p.op = c.op();
  p.total_digits = total_operand_digits(c);
  p.directive = c.directive();
  return p;
}

inline RenderedPrompt render_format_prompt(const ExpressionCase& c, FormatId fmt, PromptStrategy s) {
  if (!is_format_strategy(s))
    throw Error(ErrorKind::ConfigError, "strategy " + std::string(strategy_name(s)) + " belongs to the script track");
  RenderedPrompt p;
  p.case_id = c.id();
  p.variant = fmt;
  p.strategy = s;
  p.system_text = system_prompt(s);
  p.expression = render_expression(c, fmt);
  const std::string query = std::string(c.directive().instruction()) + "\n" + p.expression;
  if (s == PromptStrategy::FormattedOutputHint) {
    p.user_text = format_hint(fmt) + "\n\n" + query;
  } else if (s == PromptStrategy::FormattedOutputFewshot) {
    p.user_text = "Here are some examples:\n";
    int n = 0;
    for (const auto& ex : fewshot_pool()) {
      p.user_text += "Example " + std::to_string(++n) + ":\n" + std::string(ex.directive().instruction()) + "\n" +
                     render_expression(ex, fmt) + "\nAnswer: " + render(ex.answer(), fmt) + "\n\n";
    }
    p.user_text += query;
  } else {
    p.user_text = query;
  }
  p.expected_answer_value = c.answer();
  p.expected_answer_text = expected_text(c.answer(), p.variant, s);
  p.op = c.op();
  p.total_digits = total_operand_digits(c);
  p.directive = c.directive();
  return p;
}

/// One prompt per (case, script, strategy), ordered by case id, then script,
/// then strategy as given.
inline std::vector<RenderedPrompt> render_script_suite(const std::vector<ExpressionCase>& cases,
                                                       const std::vector<ScriptId>& scripts,
                                                       const std::vector<PromptStrategy>& strategies,
                                                       const PromptCatalog& catalog = PromptCatalog{}) {
  std::vector<RenderedPrompt> out;
  out.reserve(cases.size() * scripts.size() * strategies.size());
  for (const auto& c : cases)
    for (ScriptId s : scripts)
      for (PromptStrategy st : strategies) out.push_back(render_script_prompt(c, s, st, catalog));
  return out;
}

inline std::vector<RenderedPrompt> render_format_suite(const std::vector<ExpressionCase>& cases,
                                                       const std::vector<FormatId>& formats,
                                                       const std::vector<PromptStrategy>& strategies) {
  std::vector<RenderedPrompt> out;
  out.reserve(cases.size() * formats.size() * strategies.size());
  for (const auto& c : cases)
    for (FormatId f : formats)
      for (PromptStrategy st : strategies) out.push_back(render_format_prompt(c, f, st));
  return out;
}

}  // namespace numeralkit

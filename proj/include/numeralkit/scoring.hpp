#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "numeralkit/benchmark_builder.hpp"

namespace numeralkit {

enum class Outcome : std::uint8_t { Correct, InstructionError, ArithmeticError, FormattingError, NoOutput };

inline constexpr std::array<Outcome, 5> kOutcomes = {Outcome::Correct, Outcome::InstructionError,
                                                     Outcome::ArithmeticError, Outcome::FormattingError,
                                                     Outcome::NoOutput};

inline std::string_view outcome_name(Outcome o) {
  static constexpr std::string_view kNames[] = {"Correct", "InstructionError", "ArithmeticError", "FormattingError",
                                                "NoOutput"};
  return kNames[static_cast<std::size_t>(o)];
}

inline Outcome parse_outcome(std::string_view name) {
  for (Outcome o : kOutcomes)
    if (outcome_name(o) == name) return o;
  throw Error(ErrorKind::UnknownName, "unknown outcome '" + std::string(name) + "'");
}

inline std::ostream& operator<<(std::ostream& os, Outcome o) { return os << outcome_name(o); }

struct ModelResponse {
  std::int64_t case_id = 0;
  Variant variant = ScriptId::HinduArabic;
  PromptStrategy strategy = PromptStrategy::EnglishOperator;
  std::string model_id;
  std::string raw_text;
  bool truncated = false;
};

struct ScoreRecord {
  std::int64_t case_id = 0;
  Variant variant = ScriptId::HinduArabic;
  PromptStrategy strategy = PromptStrategy::EnglishOperator;
  std::string model_id;
  Outcome outcome = Outcome::NoOutput;
  std::optional<std::string> extracted_text;
  bool value_correct_format_wrong = false;
};

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline bool is_emphasis(char c) { return c == '*' || c == '_' || c == '`'; }

// Drops markdown emphasis around the payload and one trailing period.
inline std::string_view strip_decoration(std::string_view s) {
  for (int pass = 0; pass < 2; ++pass) {
    s = trim(s);
    while (!s.empty() && is_emphasis(s.front())) s = trim(s.substr(1));
    while (!s.empty() && is_emphasis(s.back())) s = trim(s.substr(0, s.size() - 1));
    if (pass == 0 && !s.empty() && s.back() == '.') s.remove_suffix(1);
  }
  return s;
}

inline char ascii_lower(char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; }

inline std::size_t rfind_marker(std::string_view text) {
  static constexpr std::string_view kMarker = "answer:";
  if (text.size() < kMarker.size()) return std::string_view::npos;
  for (std::size_t i = text.size() - kMarker.size() + 1; i-- > 0;) {
    bool hit = true;
    for (std::size_t k = 0; k < kMarker.size() && hit; ++k) hit = ascii_lower(text[i + k]) == kMarker[k];
    if (hit) return i;
  }
  return std::string_view::npos;
}

}  // namespace detail

/// Payload after the last "Answer:" (any case) up to end of line, trimmed,
/// with emphasis markers and a trailing period removed.
inline std::optional<std::string> extract_answer(std::string_view raw) {
  const std::size_t at = detail::rfind_marker(raw);
  if (at == std::string_view::npos) return std::nullopt;
  std::string_view line = raw.substr(at + 7);
  line = line.substr(0, line.find('\n'));
  const std::string_view payload = detail::strip_decoration(line);
  if (payload.empty()) return std::nullopt;
  return std::string(payload);
}

namespace detail {

// Map every registered positional digit to ASCII, leaving anything else.
inline std::string fold_digits(std::string_view text) {
  std::string out;
  for (char32_t cp : utf8::decode(text)) {
    const auto sd = script_of_codepoint(cp);
    if (sd && sd->script != ScriptId::ChineseSimplified)
      out.push_back(static_cast<char>('0' + sd->value));
    else
      utf8::append(out, cp);
  }
  return out;
}

inline void push_unique(std::vector<ExactDecimal>& v, ExactDecimal x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(std::move(x));
}

template <class F>
inline void try_push(std::vector<ExactDecimal>& v, F&& f) {
  try {
    push_unique(v, f());
  } catch (const Error&) {
  }
}

inline std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
  return s;
}

}  // namespace detail

/// Every value the text could plausibly denote, ignoring the contract:
/// whole-text script decoding, plain decimals, and all six formats (lenient)
/// after folding native digits to ASCII. Order is first-found.
inline std::vector<ExactDecimal> loose_interpretations(std::string_view text) {
  std::vector<ExactDecimal> out;
  detail::try_push(out, [&] { return from_script(text); });
  const std::string folded = detail::fold_digits(text);
  const std::string spaced = detail::replace_all(folded, " ", utf8::encode(kThinSpace));
  detail::try_push(out, [&] { return ExactDecimal::parse(folded); });
  for (FormatId f : all_formats()) {
    detail::try_push(out, [&] { return parse(folded, f, ParseMode::Lenient); });
    if (spaced != folded) detail::try_push(out, [&] { return parse(spaced, f, ParseMode::Lenient); });
  }
  return out;
}

/// Values the text denotes under the strategy's output contract.
inline std::vector<ExactDecimal> contract_interpretations(std::string_view text, const Variant& variant,
                                                          PromptStrategy strategy) {
  std::vector<ExactDecimal> out;
  if (const auto* script = std::get_if<ScriptId>(&variant)) {
    auto in_script = [&](ScriptId s) {
      detail::try_push(out, [&] {
        ExactDecimal v = from_script(NumeralString{std::string(text), s});
        if (is_positional(s) && to_script(v, s).text != text)
          throw Error(ErrorKind::MalformedNumeral, "non-canonical spelling");
        return v;
      });
    };
    in_script(*script);
    if (strategy == PromptStrategy::EnglishOperator && *script != ScriptId::HinduArabic) in_script(ScriptId::HinduArabic);
    return out;
  }
  const FormatId fmt = std::get<FormatId>(variant);
  if (strategy == PromptStrategy::AnyOutput) {
    detail::try_push(out, [&] { return ExactDecimal::parse(text); });
    for (FormatId f : all_formats()) detail::try_push(out, [&] { return parse(text, f); });
    return out;
  }
  detail::try_push(out, [&] {
    ExactDecimal v = parse(text, fmt);
    if (render(v, fmt) != text) throw Error(ErrorKind::MalformedForFormat, "not the formatted rendering");
    return v;
  });
  return out;
}

inline bool same_identity(const ModelResponse& r, const RenderedPrompt& p) {
  return r.case_id == p.case_id && r.variant == p.variant && r.strategy == p.strategy;
}

/// Decision cascade: NoOutput, Correct under the contract, then the loose
/// reading decides Formatting / Instruction / Arithmetic.
inline ScoreRecord score(const ModelResponse& response, const RenderedPrompt& prompt) {
  if (!same_identity(response, prompt))
    throw Error(ErrorKind::SuiteMismatch, "response (" + std::to_string(response.case_id) + ", " +
                                              variant_name(response.variant) + ", " +
                                              std::string(strategy_name(response.strategy)) +
                                              ") does not belong to prompt " + std::to_string(prompt.case_id));
  ScoreRecord rec{response.case_id, response.variant, response.strategy, response.model_id, Outcome::NoOutput, {}, false};

  std::optional<std::string> text = extract_answer(response.raw_text);
  if (!text && !response.truncated) {
    // a bare one-line number without the marker is a tolerated deviation
    const std::string_view bare = detail::strip_decoration(response.raw_text);
    if (!bare.empty() && bare.find('\n') == std::string_view::npos && !loose_interpretations(bare).empty())
      text = std::string(bare);
  }
  if (!text) return rec;
  rec.extracted_text = text;

  const ExactDecimal& want = prompt.expected_answer_value;
  for (const auto& v : contract_interpretations(*text, prompt.variant, prompt.strategy))
    if (v == want) {
      rec.outcome = Outcome::Correct;
      return rec;
    }

  const auto loose = loose_interpretations(*text);
  if (loose.empty()) {
    rec.outcome = Outcome::InstructionError;
    return rec;
  }
  for (const auto& v : loose)
    if (v == want) {
      rec.outcome = Outcome::FormattingError;
      rec.value_correct_format_wrong = true;
      return rec;
    }
  const int places = prompt.directive.places();
  const bool any_right_shape =
      std::any_of(loose.begin(), loose.end(), [&](const ExactDecimal& v) { return v.scale() == places; });
  rec.outcome = any_right_shape ? Outcome::ArithmeticError : Outcome::InstructionError;
  return rec;
}

/// Scores each response against the prompt with the same identity.
inline std::vector<ScoreRecord> score_all(const std::vector<ModelResponse>& responses,
                                          const std::vector<RenderedPrompt>& suite) {
  std::map<std::tuple<std::int64_t, std::string, int>, const RenderedPrompt*> index;
  for (const auto& p : suite) index[{p.case_id, variant_name(p.variant), static_cast<int>(p.strategy)}] = &p;
  std::vector<ScoreRecord> out;
  out.reserve(responses.size());
  for (const auto& r : responses) {
    auto it = index.find({r.case_id, variant_name(r.variant), static_cast<int>(r.strategy)});
    if (it == index.end())
      throw Error(ErrorKind::SuiteMismatch, "case " + std::to_string(r.case_id) + " (" + variant_name(r.variant) +
                                                ", " + std::string(strategy_name(r.strategy)) + ") not in suite");
    out.push_back(score(r, *it->second));
  }
  return out;
}

/// Script-identification answers name the script or a language written in it.
inline bool score_script_identification(std::string_view raw, ScriptId expected,
                                        const std::vector<std::string>& extra_aliases = {}) {
  const auto text = extract_answer(raw);
  if (!text) return false;
  const std::string got = numeralkit::detail::fold_name(*text);
  if (got == numeralkit::detail::fold_name(display_name(expected)) ||
      got == numeralkit::detail::fold_name(script_name(expected)) ||
      got == numeralkit::detail::fold_name(language_for(expected)))
    return true;
  for (const auto& a : extra_aliases)
    if (got == numeralkit::detail::fold_name(a)) return true;
  return false;
}

struct GroupStats {
  std::string model_id;
  std::string variant;
  PromptStrategy strategy = PromptStrategy::EnglishOperator;
  std::size_t n = 0;
  std::array<std::size_t, 5> counts{};
  double accuracy = 0.0;
  double stddev = 0.0;  // population std of the 0/1 correctness indicator
  std::array<double, 5> shares{};
};

struct BestVariant {
  std::string model_id;
  PromptStrategy strategy = PromptStrategy::EnglishOperator;
  std::string variant;  // empty when only reference variants were scored
  double accuracy = 0.0;
};

struct AccuracyTable {
  std::vector<GroupStats> groups;      // sorted by (model, variant, strategy)
  std::vector<BestVariant> best;       // max over non-reference variants per (model, strategy)
};

inline bool is_reference_variant(std::string_view variant) { return variant == "HinduArabic" || variant == "F1"; }

inline AccuracyTable aggregate(const std::vector<ScoreRecord>& records) {
  if (records.empty()) throw Error(ErrorKind::BadRecord, "no score records to aggregate");
  std::map<std::tuple<std::string, std::string, int>, GroupStats> groups;
  for (const auto& r : records) {
    const std::string v = variant_name(r.variant);
    auto& g = groups[{r.model_id, v, static_cast<int>(r.strategy)}];
    g.model_id = r.model_id;
    g.variant = v;
    g.strategy = r.strategy;
    ++g.n;
    ++g.counts[static_cast<std::size_t>(r.outcome)];
  }
  AccuracyTable table;
  std::map<std::pair<std::string, int>, BestVariant> best;
  for (auto& [key, g] : groups) {
    const double n = static_cast<double>(g.n);
    for (std::size_t k = 0; k < 5; ++k) g.shares[k] = static_cast<double>(g.counts[k]) / n;
    g.accuracy = g.shares[0];
    g.stddev = std::sqrt(g.accuracy * (1.0 - g.accuracy));
    auto& b = best[{g.model_id, static_cast<int>(g.strategy)}];
    b.model_id = g.model_id;
    b.strategy = g.strategy;
    if (!is_reference_variant(g.variant) && (b.variant.empty() || g.accuracy > b.accuracy)) {
      b.variant = g.variant;
      b.accuracy = g.accuracy;
    }
    table.groups.push_back(g);
  }
  for (auto& [key, b] : best) table.best.push_back(b);
  return table;
}

}  // namespace numeralkit

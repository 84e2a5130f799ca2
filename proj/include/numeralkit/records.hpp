#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "numeralkit/benchmark_builder.hpp"
#include "numeralkit/scoring.hpp"

namespace numeralkit {

using Json = nlohmann::ordered_json;

namespace records {

inline std::string dump(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::strict); }

template <class T>
T field(const Json& j, const char* name) {
  if (!j.contains(name)) throw Error(ErrorKind::BadRecord, std::string("missing field \"") + name + "\"");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::BadRecord, std::string("field \"") + name + "\" has the wrong type");
  }
}

inline Json to_json(const ExpressionCase& c) {
  return Json{{"id", c.id()},
              {"lhs", c.lhs().to_string()},
              {"op", operation_name(c.op())},
              {"rhs", c.rhs().to_string()},
              {"directive", c.directive().name()},
              {"answer", c.answer().to_string()}};
}

inline ExpressionCase case_from_json(const Json& j) {
  ExpressionCase c(field<std::int64_t>(j, "id"), ExactDecimal::parse(field<std::string>(j, "lhs")),
                   parse_operation(field<std::string>(j, "op")), ExactDecimal::parse(field<std::string>(j, "rhs")),
                   RoundingDirective::parse(field<std::string>(j, "directive")));
  if (j.contains("answer") && field<std::string>(j, "answer") != c.answer().to_string())
    throw Error(ErrorKind::BadRecord, "case " + std::to_string(c.id()) + ": stored answer " +
                                          field<std::string>(j, "answer") + " disagrees with " +
                                          c.answer().to_string());
  return c;
}

inline Json to_json(const RenderedPrompt& p) {
  return Json{{"case_id", p.case_id},
              {"variant", variant_name(p.variant)},
              {"strategy", strategy_name(p.strategy)},
              {"system", p.system_text},
              {"user", p.user_text},
              {"expected_text", p.expected_answer_text},
              {"expected_value", p.expected_answer_value.to_string()},
              {"op", operation_name(p.op)},
              {"total_digits", p.total_digits},
              {"directive", p.directive.name()},
              {"expression", p.expression}};
}

inline RenderedPrompt prompt_from_json(const Json& j) {
  RenderedPrompt p;
  p.case_id = field<std::int64_t>(j, "case_id");
  p.variant = parse_variant(field<std::string>(j, "variant"));
  p.strategy = parse_strategy(field<std::string>(j, "strategy"));
  p.system_text = field<std::string>(j, "system");
  p.user_text = field<std::string>(j, "user");
  p.expected_answer_text = field<std::string>(j, "expected_text");
  p.expected_answer_value = ExactDecimal::parse(field<std::string>(j, "expected_value"));
  p.op = parse_operation(field<std::string>(j, "op"));
  p.total_digits = field<int>(j, "total_digits");
  p.directive = RoundingDirective::parse(field<std::string>(j, "directive"));
  p.expression = field<std::string>(j, "expression");
  return p;
}

inline Json to_json(const ModelResponse& r) {
  return Json{{"case_id", r.case_id},       {"variant", variant_name(r.variant)},
              {"strategy", strategy_name(r.strategy)}, {"model_id", r.model_id},
              {"raw_text", r.raw_text},     {"truncated", r.truncated}};
}

inline ModelResponse response_from_json(const Json& j) {
  ModelResponse r;
  r.case_id = field<std::int64_t>(j, "case_id");
  r.variant = parse_variant(field<std::string>(j, "variant"));
  r.strategy = parse_strategy(field<std::string>(j, "strategy"));
  r.model_id = field<std::string>(j, "model_id");
  r.raw_text = field<std::string>(j, "raw_text");
  r.truncated = j.contains("truncated") ? field<bool>(j, "truncated") : false;
  return r;
}

inline Json to_json(const ScoreRecord& s) {
  return Json{{"case_id", s.case_id},
              {"variant", variant_name(s.variant)},
              {"strategy", strategy_name(s.strategy)},
              {"model_id", s.model_id},
              {"outcome", outcome_name(s.outcome)},
              {"extracted_text", s.extracted_text ? Json(*s.extracted_text) : Json(nullptr)},
              {"value_correct_format_wrong", s.value_correct_format_wrong}};
}

inline ScoreRecord score_from_json(const Json& j) {
  ScoreRecord s;
  s.case_id = field<std::int64_t>(j, "case_id");
  s.variant = parse_variant(field<std::string>(j, "variant"));
  s.strategy = parse_strategy(field<std::string>(j, "strategy"));
  s.model_id = field<std::string>(j, "model_id");
  s.outcome = parse_outcome(field<std::string>(j, "outcome"));
  if (j.contains("extracted_text") && !j["extracted_text"].is_null())
    s.extracted_text = field<std::string>(j, "extracted_text");
  s.value_correct_format_wrong = field<bool>(j, "value_correct_format_wrong");
  if (s.value_correct_format_wrong && s.outcome != Outcome::FormattingError)
    throw Error(ErrorKind::BadRecord, "value_correct_format_wrong set on a non-formatting outcome");
  return s;
}

inline Json to_json(const GroupStats& g) {
  Json j{{"model_id", g.model_id},   {"variant", g.variant},   {"strategy", strategy_name(g.strategy)},
         {"n", g.n},                 {"accuracy", g.accuracy}, {"std", g.stddev}};
  for (Outcome o : kOutcomes) j[std::string("share_") + std::string(outcome_name(o))] = g.shares[static_cast<std::size_t>(o)];
  return j;
}

inline Json to_json(const BestVariant& b) {
  return Json{{"model_id", b.model_id},
              {"strategy", strategy_name(b.strategy)},
              {"best_variant", b.variant.empty() ? Json(nullptr) : Json(b.variant)},
              {"accuracy", b.accuracy}};
}

/// Parses each nonblank line; errors carry the line number.
template <class T>
std::vector<T> read_jsonl(std::istream& in, const std::function<T(const Json&)>& decode, const std::string& label) {
  std::vector<T> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(decode(Json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::BadRecord, label + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.kind() == ErrorKind::UnknownName || e.kind() == ErrorKind::InvalidDecimal ? ErrorKind::BadRecord
                                                                                              : e.kind(),
                  label + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

template <class T>
std::vector<T> read_jsonl_file(const std::filesystem::path& path, const std::function<T(const Json&)>& decode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return read_jsonl<T>(in, decode, path.string());
}

inline std::vector<ExpressionCase> read_cases(const std::filesystem::path& p) {
  return read_jsonl_file<ExpressionCase>(p, case_from_json);
}
inline std::vector<RenderedPrompt> read_prompts(const std::filesystem::path& p) {
  return read_jsonl_file<RenderedPrompt>(p, prompt_from_json);
}
inline std::vector<ModelResponse> read_responses(const std::filesystem::path& p) {
  return read_jsonl_file<ModelResponse>(p, response_from_json);
}
inline std::vector<ScoreRecord> read_scores(const std::filesystem::path& p) {
  return read_jsonl_file<ScoreRecord>(p, score_from_json);
}

template <class Range>
void write_jsonl(std::ostream& os, const Range& items) {
  for (const auto& x : items) os << dump(to_json(x)) << '\n';
}

/// Writes through a sibling temp file and renames it into place, so readers
/// never see a partial file.
inline void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
    body(out);
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorKind::Io, "write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot move output into '" + path.string() + "'");
  }
}

}  // namespace records
}  // namespace numeralkit

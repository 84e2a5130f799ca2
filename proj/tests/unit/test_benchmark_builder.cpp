#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "../oracles/rational_oracle.hpp"
#include "numeralkit/benchmark_builder.hpp"

using namespace numeralkit;

namespace {

const std::vector<ExpressionCase>& default_cases() {
  static const auto cases = generate_cases(GenerationConfig{});
  return cases;
}

ExpressionCase chinese_div() {
  return ExpressionCase(1, ExactDecimal::parse("3826995"), Operation::Div, ExactDecimal::parse("549207"),
                        RoundingDirective::to_integer());
}

#define TS "\u2009"

char op_char(Operation op) { return "+-*/"[static_cast<int>(op)]; }

}  // namespace

TEST(Generation, CountsAndIds) {
  const auto& cases = default_cases();
  ASSERT_EQ(cases.size(), 336u);
  std::array<int, 4> per_op{};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    EXPECT_EQ(cases[i].id(), static_cast<std::int64_t>(i + 1));
    ++per_op[static_cast<int>(cases[i].op())];
  }
  EXPECT_EQ(per_op, (std::array<int, 4>{84, 84, 84, 84}));
}

TEST(Generation, Deterministic) {
  EXPECT_EQ(generate_cases(GenerationConfig{}), default_cases());
  GenerationConfig other;
  other.seed = 2;
  EXPECT_NE(generate_cases(other), default_cases());
}

TEST(Generation, OperandShapeAndDirectives) {
  for (const auto& c : default_cases()) {
    for (const auto* x : {&c.lhs(), &c.rhs()}) {
      EXPECT_GE(x->digit_count(), 4);
      EXPECT_LE(x->digit_count(), 8);
      EXPECT_LE(x->scale(), 3);
      EXPECT_NE(x->digits()[0], '0');
      EXPECT_FALSE(x->negative());
      if (x->scale() > 0) EXPECT_NE(x->digits().back(), '0');
    }
    const bool decimal = c.lhs().scale() > 0 || c.rhs().scale() > 0;
    if (c.op() != Operation::Div) EXPECT_EQ(c.directive().places(), decimal ? 3 : 0);
    if (c.op() == Operation::Sub) EXPECT_FALSE(c.answer().negative());
  }
}

TEST(Generation, ResultDigitFilterByExhaustiveScan) {
  for (int limit : {12, 9}) {
    GenerationConfig cfg;
    cfg.max_result_digits = limit;
    cfg.seed = 77;
    for (const auto& c : generate_cases(cfg)) {
      // independent recount from the oracle's exact text
      std::string exact = c.op() == Operation::Div
                              ? oracle::evaluate(c.lhs().to_string(), '/', c.rhs().to_string(), c.directive().places())
                              : oracle::evaluate(c.lhs().to_string(), op_char(c.op()), c.rhs().to_string(), 8);
      exact.erase(std::remove(exact.begin(), exact.end(), '.'), exact.end());
      while (exact.size() > 1 && exact.front() == '0') exact.erase(0, 1);
      if (c.op() != Operation::Div)
        while (exact.size() > 1 && exact.back() == '0' && exact.size() > c.answer().integer_part().size())
          exact.pop_back();
      EXPECT_LE(static_cast<int>(exact.size()), limit) << c.lhs().to_string() << ' ' << c.op() << ' ' << c.rhs().to_string();
    }
  }
}

TEST(Generation, BothDivisionDirectivesAppear) {
  std::set<int> seen;
  for (const auto& c : default_cases())
    if (c.op() == Operation::Div) seen.insert(c.directive().places());
  EXPECT_EQ(seen, (std::set<int>{0, 3}));
}

TEST(Generation, ConfigErrors) {
  auto expect_config_error = [](GenerationConfig cfg) {
    try {
      generate_cases(cfg);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
    }
  };
  GenerationConfig c;
  c.cases_per_op = 0;
  expect_config_error(c);
  c = {};
  c.min_digits = 0;
  expect_config_error(c);
  c = {};
  c.max_digits = 13;
  expect_config_error(c);
  c = {};
  c.decimal_operand_probability = 1.5;
  expect_config_error(c);
}

TEST(ScriptSuite, AppendixChinesePrompts) {
  const PromptCatalog catalog;
  const auto c = chinese_div();
  const auto digits = render_script_prompt(c, ScriptId::ChineseSimplified, PromptStrategy::DigitsOnlyNative, catalog);
  EXPECT_EQ(digits.user_text, "Round the answer to an integer.\n三百八十二万六千九百九十五 divided by 五十四万九千二百零七");
  EXPECT_EQ(digits.expected_answer_text, "七");
  EXPECT_EQ(digits.system_text,
            "Compute and respond ONLY with the answer. The output should be of the form: \"Answer: $ANSWER\" "
            "(without quotes) where $ANSWER is the answer to the problem. Ensure the answer is in the same script as "
            "the numbers in the question.");

  const auto expr = render_script_prompt(c, ScriptId::ChineseSimplified, PromptStrategy::ExprOnlyNative, catalog);
  EXPECT_EQ(expr.user_text, "Round the answer to an integer.\n三百八十二万六千九百九十五除以五十四万九千二百零七");

  const auto full = render_script_prompt(c, ScriptId::ChineseSimplified, PromptStrategy::ExprPromptNative, catalog);
  EXPECT_EQ(full.user_text, "将答案四舍五入到整数。\n三百八十二万六千九百九十五除以五十四万九千二百零七");

  const auto map = render_script_prompt(c, ScriptId::ChineseSimplified, PromptStrategy::ExprPromptNativeMapping, catalog);
  EXPECT_EQ(map.user_text,
            "[〇:0, 一:1, 二:2, 三:3, 四:4, 五:5, 六:6, 七:7, 八:8, 九:9, 十:10, 百:100, 千:1000, 万:10000, "
            "亿:100000000]\n将答案四舍五入到整数。\n三百八十二万六千九百九十五除以五十四万九千二百零七");
  EXPECT_NE(map.system_text.find("with the mapping between the script’s numerals and Latin numerals provided as "
                                 "reference."),
            std::string::npos);
}

TEST(ScriptSuite, EnglishOperatorKeepsOperands) {
  const PromptCatalog catalog;
  for (const auto& c : default_cases()) {
    const auto p = render_script_prompt(c, ScriptId::HinduArabic, PromptStrategy::EnglishOperator, catalog);
    EXPECT_EQ(p.expression, c.lhs().to_string() + " " + std::string(operator_word(c.op())) + " " + c.rhs().to_string());
    EXPECT_EQ(p.system_text.find("same script"), std::string::npos);
  }
}

TEST(ScriptSuite, SystemAlwaysCarriesContract) {
  for (auto s : kScriptStrategies) EXPECT_NE(system_prompt(s).find("Answer: $ANSWER"), std::string::npos);
  for (auto s : kFormatStrategies) EXPECT_NE(system_prompt(s).find("Answer: $ANSWER"), std::string::npos);
}

TEST(ScriptSuite, MissingCatalogEntryIsHard) {
  const PromptCatalog catalog;
  try {
    render_script_prompt(chinese_div(), ScriptId::Devanagari, PromptStrategy::ExprOnlyNative, catalog);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingCatalogEntry);
  }
  // English-operator strategies never consult the catalog
  EXPECT_NO_THROW(render_script_prompt(chinese_div(), ScriptId::Devanagari, PromptStrategy::DigitsOnlyNative, catalog));
}

TEST(ScriptSuite, CatalogFile) {
  PromptCatalog catalog;
  std::istringstream tsv(
      "# script\tstrategy\tslot\ttext\n"
      "Devanagari\t*\top_div\tभाग\n"
      "Devanagari\t*\tround_integer\tउत्तर को पूर्णांक में बदलें।\n"
      "Devanagari\tExprOnlyNative\top_div\tविभाजित\n");
  catalog.load(tsv);
  const auto c = chinese_div();
  EXPECT_EQ(render_script_prompt(c, ScriptId::Devanagari, PromptStrategy::ExprOnlyNative, catalog).expression,
            "३८२६९९५ विभाजित ५४९२०७");
  const auto p = render_script_prompt(c, ScriptId::Devanagari, PromptStrategy::ExprPromptNative, catalog);
  EXPECT_EQ(p.user_text, "उत्तर को पूर्णांक में बदलें।\n३८२६९९५ भाग ५४९२०७");
  std::istringstream bad("Devanagari\t*\top_div\n");
  EXPECT_THROW(catalog.load(bad), Error);
}

TEST(ScriptSuite, CardinalityAndAnswerConsistency) {
  const PromptCatalog catalog;
  const auto all = all_scripts();
  const std::vector<ScriptId> scripts(all.begin(), all.end());
  const std::vector<PromptStrategy> strategies = {PromptStrategy::DigitsOnlyNative, PromptStrategy::EnglishOperator};
  const auto suite = render_script_suite(default_cases(), scripts, strategies, catalog);
  ASSERT_EQ(suite.size(), 336u * 21u * 2u);
  for (const auto& p : suite) {
    const ScriptId s = std::get<ScriptId>(p.variant);
    ASSERT_EQ(from_script(NumeralString{p.expected_answer_text, s}), p.expected_answer_value);
  }
}

TEST(FormatSuite, AppendixF3Prompts) {
  ExpressionCase c(5, ExactDecimal::parse("22436.447"), Operation::Add, ExactDecimal::parse("4359"),
                   RoundingDirective::to_three_places());
  const auto any = render_format_prompt(c, FormatId::F3, PromptStrategy::AnyOutput);
  EXPECT_EQ(any.expected_answer_text, "26795.447");
  EXPECT_EQ(any.user_text, "Round the answer to three decimal places.\n22" TS "436,447 plus 4" TS "359");
  const auto fmt = render_format_prompt(c, FormatId::F3, PromptStrategy::FormattedOutput);
  EXPECT_EQ(fmt.expected_answer_text, "26" TS "795,447");
  const auto hint = render_format_prompt(c, FormatId::F3, PromptStrategy::FormattedOutputHint);
  EXPECT_EQ(hint.user_text.rfind("The decimal marker used is ',' and the grouping separator is '" TS "'.\n\n", 0), 0u);
  const auto few = render_format_prompt(c, FormatId::F3, PromptStrategy::FormattedOutputFewshot);
  EXPECT_EQ(few.user_text,
            "Here are some examples:\nExample 1:\nRound the answer to three decimal places.\n4" TS "958,155 multiplied by "
            "93,2\nAnswer: 462" TS "100,046\n\nExample 2:\nRound the answer to three decimal places.\n9" TS "628" TS "240 divided "
            "by 44" TS "847\nAnswer: 214,691\n\nRound the answer to three decimal places.\n22" TS "436,447 plus 4" TS "359");
}

TEST(FormatSuite, FewshotHygieneAndCardinality) {
  const auto formats = all_formats();
  const auto suite = render_format_suite(default_cases(), {formats.begin(), formats.end()},
                                         {kFormatStrategies.begin(), kFormatStrategies.end()});
  ASSERT_EQ(suite.size(), 336u * 6u * 4u);
  std::set<std::int64_t> scored;
  for (const auto& p : suite) scored.insert(p.case_id);
  for (const auto& ex : fewshot_pool()) EXPECT_EQ(scored.count(ex.id()), 0u);
  for (const auto& p : suite) {
    const FormatId f = std::get<FormatId>(p.variant);
    const ExactDecimal back = p.strategy == PromptStrategy::AnyOutput ? ExactDecimal::parse(p.expected_answer_text)
                                                                      : parse(p.expected_answer_text, f);
    ASSERT_EQ(back, p.expected_answer_value);
    if (p.strategy == PromptStrategy::FormattedOutputFewshot) {
      std::size_t count = 0;
      for (std::size_t at = p.user_text.find("Answer: "); at != std::string::npos; at = p.user_text.find("Answer: ", at + 1))
        ++count;
      EXPECT_EQ(count, 2u);
    }
  }
}

TEST(FormatSuite, DeterministicBytes) {
  const auto a = render_format_suite(generate_cases(GenerationConfig{}), {FormatId::F5}, {PromptStrategy::FormattedOutputHint});
  const auto b = render_format_suite(generate_cases(GenerationConfig{}), {FormatId::F5}, {PromptStrategy::FormattedOutputHint});
  EXPECT_EQ(a, b);
}

TEST(FormatSuite, TrackMismatchRejected) {
  EXPECT_THROW(render_format_prompt(chinese_div(), FormatId::F1, PromptStrategy::DigitsOnlyNative), Error);
  EXPECT_THROW(render_script_prompt(chinese_div(), ScriptId::Thai, PromptStrategy::AnyOutput, PromptCatalog{}), Error);
}

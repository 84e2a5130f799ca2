#include <gtest/gtest.h>

#include "../fixtures/scoring_fixture.hpp"
#include "numeralkit/scoring.hpp"

using namespace numeralkit;

#define TS "\u2009"

TEST(ExtractAnswer, Rules) {
  EXPECT_EQ(extract_answer("reasoning\nAnswer: 26" TS "795,447"), "26" TS "795,447");
  EXPECT_EQ(extract_answer(""), std::nullopt);
  EXPECT_EQ(extract_answer("Answer: 7\nAnswer: 八"), "八");
  EXPECT_EQ(extract_answer("ANSWER:42"), "42");
  EXPECT_EQ(extract_answer("Answer: **42**."), "42");
  EXPECT_EQ(extract_answer("Answer: 1,234.5."), "1,234.5");
  EXPECT_EQ(extract_answer("Answer: 12\n\nThat is all."), "12");
  EXPECT_EQ(extract_answer("no marker here"), std::nullopt);
}

TEST(Score, FortyResponseFixture) {
  const auto items = fixture::scoring_items();
  ASSERT_EQ(items.size(), 40u);
  std::array<int, 5> per_outcome{};
  for (const auto& it : items) {
    const auto rec = score(it.response, it.prompt);
    EXPECT_EQ(rec.outcome, it.want) << it.response.raw_text;
    EXPECT_EQ(rec.value_correct_format_wrong, it.value_correct_format_wrong) << it.response.raw_text;
    if (rec.value_correct_format_wrong) EXPECT_EQ(rec.outcome, Outcome::FormattingError);
    ++per_outcome[static_cast<int>(it.want)];
  }
  EXPECT_EQ(per_outcome, (std::array<int, 5>{8, 8, 8, 8, 8}));
}

TEST(Score, ReplayedExpectedAnswersAreCorrect) {
  const auto cases = generate_cases(GenerationConfig{});
  const auto formats = all_formats();
  auto suite = render_format_suite(cases, {formats.begin(), formats.end()},
                                   {kFormatStrategies.begin(), kFormatStrategies.end()});
  const auto scripts = all_scripts();
  const auto script_suite = render_script_suite(cases, {scripts.begin(), scripts.end()},
                                                {PromptStrategy::DigitsOnlyNative, PromptStrategy::EnglishOperator});
  suite.insert(suite.end(), script_suite.begin(), script_suite.end());
  for (const auto& p : suite) {
    const ModelResponse r{p.case_id, p.variant, p.strategy, "m", "Answer: " + p.expected_answer_text, false};
    ASSERT_EQ(score(r, p).outcome, Outcome::Correct) << p.expected_answer_text;
  }
}

TEST(Score, FormattedCorrectImpliesAnyOutputCorrect) {
  const auto cases = generate_cases(GenerationConfig{});
  for (FormatId f : all_formats())
    for (std::size_t i = 0; i < cases.size(); i += 7) {
      const auto fp = render_format_prompt(cases[i], f, PromptStrategy::FormattedOutput);
      const auto ap = render_format_prompt(cases[i], f, PromptStrategy::AnyOutput);
      for (const std::string& text : {fp.expected_answer_text, ap.expected_answer_text,
                                      render(cases[i].answer(), FormatId::F1), cases[i].answer().to_string() + "1"}) {
        const ModelResponse rf{fp.case_id, fp.variant, fp.strategy, "m", "Answer: " + text, false};
        const ModelResponse ra{ap.case_id, ap.variant, ap.strategy, "m", "Answer: " + text, false};
        if (score(rf, fp).outcome == Outcome::Correct) EXPECT_EQ(score(ra, ap).outcome, Outcome::Correct) << text;
      }
    }
}

TEST(Score, EnglishOperatorAcceptsEitherScript) {
  const PromptCatalog catalog;
  ExpressionCase c(9, ExactDecimal::parse("1200"), Operation::Add, ExactDecimal::parse("34"), RoundingDirective::to_integer());
  const auto p = render_script_prompt(c, ScriptId::Thai, PromptStrategy::EnglishOperator, catalog);
  for (const char* text : {"Answer: 1234", "Answer: ๑๒๓๔"}) {
    const ModelResponse r{p.case_id, p.variant, p.strategy, "m", text, false};
    EXPECT_EQ(score(r, p).outcome, Outcome::Correct) << text;
  }
  const auto q = render_script_prompt(c, ScriptId::Thai, PromptStrategy::DigitsOnlyNative, catalog);
  const ModelResponse r{q.case_id, q.variant, q.strategy, "m", "Answer: 1234", false};
  EXPECT_EQ(score(r, q).outcome, Outcome::FormattingError);
}

TEST(Score, BareAnswerTolerated) {
  const auto items = fixture::scoring_items();
  const auto& p = items[0].prompt;
  EXPECT_EQ(score(ModelResponse{p.case_id, p.variant, p.strategy, "m", "七", false}, p).outcome, Outcome::Correct);
  EXPECT_EQ(score(ModelResponse{p.case_id, p.variant, p.strategy, "m", "七", true}, p).outcome, Outcome::NoOutput);
}

TEST(Score, SuiteMismatch) {
  const auto items = fixture::scoring_items();
  auto r = items[0].response;
  r.case_id = 99;
  try {
    score(r, items[0].prompt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SuiteMismatch);
  }
  std::vector<RenderedPrompt> suite = {items[0].prompt};
  EXPECT_THROW(score_all({r}, suite), Error);
}

TEST(Score, ScriptIdentification) {
  EXPECT_TRUE(score_script_identification("Answer: Devanagari", ScriptId::Devanagari));
  EXPECT_TRUE(score_script_identification("Answer: Hindi", ScriptId::Devanagari));
  EXPECT_TRUE(score_script_identification("answer: n'ko", ScriptId::Nko));
  EXPECT_FALSE(score_script_identification("Answer: Marathi", ScriptId::Devanagari));
  EXPECT_TRUE(score_script_identification("Answer: Marathi", ScriptId::Devanagari, {"Marathi"}));
  EXPECT_FALSE(score_script_identification("Devanagari", ScriptId::Devanagari));
}

TEST(Aggregate, SharesAndAccuracy) {
  std::vector<ScoreRecord> recs;
  auto push = [&](const char* model, Variant v, Outcome o) {
    recs.push_back(ScoreRecord{static_cast<std::int64_t>(recs.size() + 1), v, PromptStrategy::AnyOutput, model, o, {}, false});
  };
  for (int i = 0; i < 3; ++i) push("m1", FormatId::F2, Outcome::Correct);
  push("m1", FormatId::F2, Outcome::ArithmeticError);
  push("m1", FormatId::F1, Outcome::Correct);
  push("m1", FormatId::F3, Outcome::NoOutput);
  const auto t = aggregate(recs);
  ASSERT_EQ(t.groups.size(), 3u);
  const auto& f2 = t.groups[1];
  EXPECT_EQ(f2.variant, "F2");
  EXPECT_DOUBLE_EQ(f2.accuracy, 0.75);
  EXPECT_DOUBLE_EQ(f2.stddev, std::sqrt(0.75 * 0.25));
  for (const auto& g : t.groups) {
    double sum = 0;
    for (double s : g.shares) sum += s;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  ASSERT_EQ(t.best.size(), 1u);
  EXPECT_EQ(t.best[0].variant, "F2");
  EXPECT_DOUBLE_EQ(t.best[0].accuracy, 0.75);
  EXPECT_THROW(aggregate({}), Error);
}

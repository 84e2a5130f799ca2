#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "../fixtures/scoring_fixture.hpp"
#include "numeralkit/regression.hpp"

using namespace numeralkit;

namespace {

struct Synthetic {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  std::vector<std::string> names{"Intercept", "x", "d"};
};

// logit p = 1.0 - 0.5 x - 2.0 d with x ~ U(-3, 3), d ~ Bernoulli(0.5)
Synthetic synthetic(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), u(0.0, 1.0);
  Synthetic s;
  s.X.resize(n, 3);
  s.y.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = ux(rng), d = u(rng) < 0.5 ? 1.0 : 0.0;
    s.X.row(i) << 1.0, x, d;
    const double p = 1.0 / (1.0 + std::exp(-(1.0 - 0.5 * x - 2.0 * d)));
    s.y(i) = u(rng) < p ? 1.0 : 0.0;
  }
  return s;
}

ErrorKind fit_error(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::vector<std::string> names) {
  try {
    fit(X, y, std::move(names));
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "fit succeeded";
  return ErrorKind::Io;
}

}  // namespace

TEST(Regression, RecoversKnownModel) {
  const auto s = synthetic(50000, 42);
  const auto f = fit(s.X, s.y, s.names);
  EXPECT_TRUE(f.converged);
  EXPECT_LE(f.iterations, 25);
  EXPECT_NEAR(f.coef(0), 1.0, 0.05);
  EXPECT_NEAR(f.coef(1), -0.5, 0.05);
  EXPECT_NEAR(f.coef(2), -2.0, 0.05);
  for (int c = 0; c < 3; ++c) EXPECT_LT(f.p(c), 0.01);
  EXPECT_LT(logit::gradient(s.X, s.y, f.coef).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Regression, GradientMatchesFiniteDifferences) {
  const auto s = synthetic(2000, 7);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::VectorXd b(3);
    b << u(rng), u(rng), u(rng);
    const Eigen::VectorXd g = logit::gradient(s.X, s.y, b);
    for (int c = 0; c < 3; ++c) {
      const double h = 1e-5;
      Eigen::VectorXd bp = b, bm = b;
      bp(c) += h;
      bm(c) -= h;
      const double fd = (logit::loglik(s.X, s.y, bp) - logit::loglik(s.X, s.y, bm)) / (2 * h);
      EXPECT_NEAR(g(c), fd, 1e-4 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(Regression, MonotoneLikelihood) {
  const auto s = synthetic(5000, 9);
  const auto f = fit(s.X, s.y, s.names);
  for (std::size_t i = 1; i < f.loglik_history.size(); ++i)
    EXPECT_GE(f.loglik_history[i], f.loglik_history[i - 1] - 1e-10 * (1.0 + std::abs(f.loglik_history[i - 1])));
  EXPECT_GT(f.loglik_history.back(), f.loglik_history.front());
}

TEST(Regression, WaldMatchesHandComputation) {
  const auto s = synthetic(3000, 11);
  const auto f = fit(s.X, s.y, s.names);
  const Eigen::MatrixXd cov = logit::information(s.X, f.coef).inverse();
  for (int c = 0; c < 3; ++c) {
    EXPECT_NEAR(f.se(c), std::sqrt(cov(c, c)), 1e-12);
    const double z = f.coef(c) / f.se(c);
    EXPECT_NEAR(f.p(c), 2.0 * (1.0 - 0.5 * std::erfc(-std::abs(z) / std::sqrt(2.0))), 1e-12);
  }
}

TEST(Regression, Errors) {
  const auto s = synthetic(500, 3);
  EXPECT_EQ(fit_error(s.X, Eigen::VectorXd::Ones(500), s.names), ErrorKind::DegenerateResponse);
  Eigen::MatrixXd dup(500, 4);
  dup << s.X, s.X.col(1);
  EXPECT_EQ(fit_error(dup, s.y, {"Intercept", "x", "d", "x2"}), ErrorKind::SingularDesign);
  // a factor with every level coded duplicates the intercept
  Eigen::MatrixXd full(500, 4);
  full << s.X, (1.0 - s.X.col(2).array()).matrix();
  EXPECT_EQ(fit_error(full, s.y, {"Intercept", "x", "d", "not_d"}), ErrorKind::SingularDesign);
  // y = 1 exactly when x > 0
  Eigen::VectorXd sep(500);
  for (int i = 0; i < 500; ++i) sep(i) = s.X(i, 1) > 0 ? 1.0 : 0.0;
  EXPECT_EQ(fit_error(s.X, sep, s.names), ErrorKind::SeparationDetected);
}

TEST(Regression, Deterministic) {
  const auto s = synthetic(4000, 5);
  const auto a = fit(s.X, s.y, s.names), b = fit(s.X, s.y, s.names);
  EXPECT_EQ(a.coef, b.coef);
  EXPECT_EQ(a.loglik_history, b.loglik_history);
}

TEST(Design, ResponseIsCorrectIndicator) {
  const auto items = fixture::scoring_items();
  std::vector<ScoreRecord> recs;
  std::vector<RenderedPrompt> suite;
  for (std::size_t i = 0; i < 10; ++i) {
    const auto& it = items[i * 4];
    suite.push_back(it.prompt);
    recs.push_back(score(it.response, it.prompt));
  }
  const auto rows = build_design(recs, suite, TokenizationScheme::chunk3());
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].response, recs[i].outcome == Outcome::Correct ? 1 : 0);
    EXPECT_EQ(rows[i].case_id, recs[i].case_id);
  }
  const auto dropped = build_design(recs, suite, TokenizationScheme::chunk3(), {"F3"});
  for (const auto& r : dropped) EXPECT_NE(variant_name(r.variant), "F3");
  EXPECT_LT(dropped.size(), rows.size());

  std::vector<RenderedPrompt> partial(suite.begin(), suite.begin() + 1);
  try {
    build_design(recs, partial, TokenizationScheme::chunk3());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::JoinFailure);
  }
}

TEST(Design, CardinalityAndColumns) {
  GenerationConfig cfg;
  const auto cases = generate_cases(cfg);
  const std::vector<ScriptId> scripts = {ScriptId::HinduArabic, ScriptId::Devanagari, ScriptId::Thai,
                                         ScriptId::ChineseSimplified};
  const auto suite = render_script_suite(cases, scripts, {PromptStrategy::EnglishOperator, PromptStrategy::DigitsOnlyNative});
  std::vector<ScoreRecord> recs;
  std::mt19937_64 rng(4);
  for (const std::string model : {"m1", "m2", "m3"})
    for (const auto& p : suite)
      recs.push_back({p.case_id, p.variant, p.strategy, model, rng() % 3 ? Outcome::Correct : Outcome::ArithmeticError, {}, false});
  const auto rows = build_design(recs, suite, TokenizationScheme::chunk3(), {"Thai"});
  EXPECT_EQ(rows.size(), 336u * 3u * 2u * 3u);
  const auto d = design_matrix(rows, DesignOptions{true});
  const std::vector<std::string> want = {"Intercept",          "total_digits",        "op:sub",
                                         "op:mul",             "op:div",              "tokens_per_digit",
                                         "variant:Devanagari", "variant:ChineseSimplified", "strategy:DigitsOnlyNative",
                                         "model:m2",           "model:m3"};
  EXPECT_EQ(d.names, want);
  const auto f = fit(d);
  EXPECT_TRUE(f.converged);

  std::ostringstream csv;
  export_design_csv(csv, rows, DesignOptions{true});
  const std::string text = csv.str();
  const std::string header = text.substr(0, text.find('\n'));
  EXPECT_EQ(header,
            "response,total_digits,op:sub,op:mul,op:div,tokens_per_digit,variant:Devanagari,variant:ChineseSimplified,"
            "strategy:DigitsOnlyNative,model:m2,model:m3,model,index");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), static_cast<long>(rows.size() + 1));
}

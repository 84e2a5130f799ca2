#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "numeralkit/benchmark_builder.hpp"
#include "numeralkit/scoring.hpp"
#include "numeralkit/tokenization.hpp"

namespace numeralkit {

struct ObservationRow {
  int response = 0;
  int total_digits = 0;
  Operation operation = Operation::Add;
  Variant variant = ScriptId::HinduArabic;
  Ratio tokens_per_digit;
  PromptStrategy strategy = PromptStrategy::EnglishOperator;
  std::string model_id;
  std::int64_t case_id = 0;
};

struct DesignOptions {
  bool model_dummies = false;  // fixed effects standing in for the random model intercept
};

struct DesignMatrix {
  std::vector<std::string> names;
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
};

struct FitResult {
  std::vector<std::string> names;
  Eigen::VectorXd coef;
  Eigen::VectorXd se;
  Eigen::VectorXd z;
  Eigen::VectorXd p;
  double loglik = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> loglik_history;  // after each step, starting at beta = 0; non-decreasing up to
                                       // 1e-10 relative rounding slack
};

/// One row per score record, joined to its prompt; blacklisted variant
/// names are dropped.
inline std::vector<ObservationRow> build_design(const std::vector<ScoreRecord>& records,
                                                const std::vector<RenderedPrompt>& suite,
                                                const TokenizationScheme& scheme,
                                                const std::set<std::string>& blacklist = {}) {
  std::map<std::tuple<std::int64_t, std::string, int>, const RenderedPrompt*> index;
  for (const auto& p : suite) index[{p.case_id, variant_name(p.variant), static_cast<int>(p.strategy)}] = &p;
  std::map<std::string, Ratio> tpd_cache;
  std::vector<ObservationRow> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    const std::string v = variant_name(r.variant);
    if (blacklist.count(v)) continue;
    auto it = index.find({r.case_id, v, static_cast<int>(r.strategy)});
    if (it == index.end())
      throw Error(ErrorKind::JoinFailure, "score record (" + std::to_string(r.case_id) + ", " + v + ", " +
                                              std::string(strategy_name(r.strategy)) + ") has no prompt in the suite");
    const RenderedPrompt& p = *it->second;
    auto cached = tpd_cache.find(p.expression);
    if (cached == tpd_cache.end()) cached = tpd_cache.emplace(p.expression, tokens_per_digit(p.expression, scheme)).first;
    rows.push_back(ObservationRow{r.outcome == Outcome::Correct ? 1 : 0, p.total_digits, p.op, r.variant,
                                  cached->second, r.strategy, r.model_id, r.case_id});
  }
  return rows;
}

namespace detail {

inline bool is_reference(const Variant& v) {
  if (const auto* s = std::get_if<ScriptId>(&v)) return *s == ScriptId::HinduArabic;
  return std::get<FormatId>(v) == FormatId::F1;
}

inline int variant_order(const Variant& v) {
  if (const auto* s = std::get_if<ScriptId>(&v)) return static_cast<int>(*s);
  return 100 + static_cast<int>(std::get<FormatId>(v));
}

}  // namespace detail

/// Dummy-coded design. Reference levels (Hindu-Arabic / F1, add,
/// EnglishOperator / AnyOutput, first model id) get no column.
inline DesignMatrix design_matrix(const std::vector<ObservationRow>& rows, const DesignOptions& opt = {}) {
  std::set<std::pair<int, std::string>> variants;
  std::set<int> strategies;
  std::set<std::string> models;
  for (const auto& r : rows) {
    if (!detail::is_reference(r.variant)) variants.insert({detail::variant_order(r.variant), variant_name(r.variant)});
    if (r.strategy != PromptStrategy::EnglishOperator && r.strategy != PromptStrategy::AnyOutput)
      strategies.insert(static_cast<int>(r.strategy));
    models.insert(r.model_id);
  }
  DesignMatrix d;
  d.names = {"Intercept", "total_digits", "op:sub", "op:mul", "op:div", "tokens_per_digit"};
  std::map<std::string, int> variant_col, model_col;
  std::map<int, int> strategy_col;
  for (const auto& [order, name] : variants) {
    variant_col[name] = static_cast<int>(d.names.size());
    d.names.push_back("variant:" + name);
  }
  for (int s : strategies) {
    strategy_col[s] = static_cast<int>(d.names.size());
    d.names.push_back("strategy:" + std::string(strategy_name(static_cast<PromptStrategy>(s))));
  }
  if (opt.model_dummies && models.size() > 1)
    for (auto it = std::next(models.begin()); it != models.end(); ++it) {
      model_col[*it] = static_cast<int>(d.names.size());
      d.names.push_back("model:" + *it);
    }
  const auto n = static_cast<Eigen::Index>(rows.size());
  d.X = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(d.names.size()));
  d.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    d.y(i) = r.response;
    d.X(i, 0) = 1.0;
    d.X(i, 1) = r.total_digits;
    if (r.operation != Operation::Add) d.X(i, 1 + static_cast<int>(r.operation)) = 1.0;
    d.X(i, 5) = r.tokens_per_digit.value();
    if (auto it = variant_col.find(variant_name(r.variant)); it != variant_col.end()) d.X(i, it->second) = 1.0;
    if (auto it = strategy_col.find(static_cast<int>(r.strategy)); it != strategy_col.end()) d.X(i, it->second) = 1.0;
    if (auto it = model_col.find(r.model_id); it != model_col.end()) d.X(i, it->second) = 1.0;
  }
  return d;
}

/// CSV: response, every non-intercept design column, then model and index
/// (case id) for external mixed-model tools.
inline void export_design_csv(std::ostream& os, const std::vector<ObservationRow>& rows, const DesignOptions& opt = {}) {
  const DesignMatrix d = design_matrix(rows, opt);
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  os << "response";
  for (std::size_t c = 1; c < d.names.size(); ++c) os << ',' << quote(d.names[c]);
  os << ",model,index\n";
  os.precision(17);
  for (Eigen::Index i = 0; i < d.X.rows(); ++i) {
    os << static_cast<int>(d.y(i));
    for (Eigen::Index c = 1; c < d.X.cols(); ++c) os << ',' << d.X(i, c);
    const auto& r = rows[static_cast<std::size_t>(i)];
    os << ',' << quote(r.model_id) << ',' << r.case_id << '\n';
  }
}

namespace logit {

// log(1 + e^x) without overflow
inline double log1pexp(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double loglik(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = X * beta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) ll += y(i) * eta(i) - log1pexp(eta(i));
  return ll;
}

inline Eigen::VectorXd gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = X * beta;
  Eigen::VectorXd resid(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) resid(i) = y(i) - sigmoid(eta(i));
  return X.transpose() * resid;
}

// X' W X with W = mu (1 - mu)
inline Eigen::MatrixXd information(const Eigen::MatrixXd& X, const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = X * beta;
  Eigen::VectorXd w(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    const double mu = sigmoid(eta(i));
    w(i) = mu * (1.0 - mu);
  }
  return X.transpose() * w.asDiagonal() * X;
}

}  // namespace logit

struct FitOptions {
  int max_iterations = 100;
  double tolerance = 1e-8;       // on max |step|
  double separation_bound = 15.0;
};

/// Maximum-likelihood logistic fit by Newton/IRLS with step halving, Wald
/// standard errors and two-sided normal p-values.
inline FitResult fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::vector<std::string> names,
                     const FitOptions& opt = {}) {
  const Eigen::Index n = X.rows(), k = X.cols();
  if (static_cast<Eigen::Index>(names.size()) != k) throw Error(ErrorKind::ConfigError, "column names do not match design");
  if (n == 0) throw Error(ErrorKind::DegenerateResponse, "no observations");
  const double ones = y.sum();
  if (ones == 0.0 || ones == static_cast<double>(n))
    throw Error(ErrorKind::DegenerateResponse, "response has a single class");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < k) {
    std::string msg = "design has rank " + std::to_string(qr.rank()) + " < " + std::to_string(k) + " columns";
    for (Eigen::Index c = 0; c < k; ++c)
      if (X.col(c).cwiseAbs().maxCoeff() == 0.0) msg += "; column '" + names[static_cast<std::size_t>(c)] + "' is all zero";
    throw Error(ErrorKind::SingularDesign, msg);
  }

  FitResult res;
  res.names = std::move(names);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
  double ll = logit::loglik(X, y, beta);
  res.loglik_history.push_back(ll);
  double prev_step = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= opt.max_iterations; ++it) {
    const Eigen::VectorXd g = logit::gradient(X, y, beta);
    const Eigen::MatrixXd H = logit::information(X, beta);
    Eigen::VectorXd step = H.ldlt().solve(g);
    if (!step.allFinite()) throw Error(ErrorKind::SingularDesign, "information matrix is not invertible");
    Eigen::VectorXd next = beta + step;
    double next_ll = logit::loglik(X, y, next);
    // rounding in the n-term sum is noise, not a likelihood decrease
    const double slack = 1e-10 * (1.0 + std::abs(ll));
    for (int halvings = 0; next_ll < ll - slack && halvings < 40; ++halvings) {
      step *= 0.5;
      next = beta + step;
      next_ll = logit::loglik(X, y, next);
    }
    const double max_step = step.cwiseAbs().maxCoeff();
    if (next_ll >= ll - slack) {
      beta = next;
      ll = next_ll;
    }
    res.loglik_history.push_back(ll);
    res.iterations = it;
    if (max_step < opt.tolerance) {
      res.converged = true;
      break;
    }
    if (beta.cwiseAbs().maxCoeff() > opt.separation_bound && max_step >= 0.5 * prev_step) {
      Eigen::Index worst = 0;
      beta.cwiseAbs().maxCoeff(&worst);
      throw Error(ErrorKind::SeparationDetected,
                  "coefficient '" + res.names[static_cast<std::size_t>(worst)] + "' diverges (|beta| = " +
                      std::to_string(std::abs(beta(worst))) + "); the data are separated");
    }
    prev_step = max_step;
  }

  res.coef = beta;
  res.loglik = ll;
  const Eigen::MatrixXd cov = logit::information(X, beta).inverse();
  res.se = cov.diagonal().cwiseSqrt();
  res.z = beta.cwiseQuotient(res.se);
  res.p.resize(k);
  for (Eigen::Index c = 0; c < k; ++c) res.p(c) = std::erfc(std::abs(res.z(c)) / std::sqrt(2.0));
  return res;
}

inline FitResult fit(const DesignMatrix& d, const FitOptions& opt = {}) { return fit(d.X, d.y, d.names, opt); }

/// Aligned coefficient table.
inline void write_fit_table(std::ostream& os, const FitResult& f) {
  std::size_t w = 7;
  for (const auto& n : f.names) w = std::max(w, n.size());
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-*s %12s %12s %10s %12s\n", static_cast<int>(w), "feature", "coef", "std_err", "z",
                "p_value");
  os << buf;
  for (std::size_t c = 0; c < f.names.size(); ++c) {
    const auto i = static_cast<Eigen::Index>(c);
    std::snprintf(buf, sizeof buf, "%-*s %12.6f %12.6f %10.3f %12.3g\n", static_cast<int>(w), f.names[c].c_str(),
                  f.coef(i), f.se(i), f.z(i), f.p(i));
    os << buf;
  }
  os << "log_likelihood " << f.loglik << "\niterations " << f.iterations << "\nconverged "
     << (f.converged ? "yes" : "no") << '\n';
}

}  // namespace numeralkit

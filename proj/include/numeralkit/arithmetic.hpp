#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "numeralkit/decimal.hpp"
#include "numeralkit/error.hpp"

namespace numeralkit {

enum class Operation : std::uint8_t { Add, Sub, Mul, Div };

inline constexpr Operation kOperations[] = {Operation::Add, Operation::Sub, Operation::Mul, Operation::Div};

inline std::string_view operation_name(Operation op) {
  static constexpr std::string_view kNames[] = {"add", "sub", "mul", "div"};
  return kNames[static_cast<std::size_t>(op)];
}

inline std::string_view operator_word(Operation op) {
  static constexpr std::string_view kWords[] = {"plus", "minus", "multiplied by", "divided by"};
  return kWords[static_cast<std::size_t>(op)];
}

inline Operation parse_operation(std::string_view name) {
  for (Operation op : kOperations)
    if (operation_name(op) == name) return op;
  throw Error(ErrorKind::UnknownName, "unknown operation '" + std::string(name) + "'");
}

inline std::ostream& operator<<(std::ostream& os, Operation op) { return os << operation_name(op); }

/// Either round to an integer or to three decimal places; three is the only
/// precision the benchmark uses.
class RoundingDirective {
 public:
  enum class Kind : std::uint8_t { ToInteger, ToDecimalPlaces };

  static constexpr RoundingDirective to_integer() { return RoundingDirective(Kind::ToInteger); }
  static constexpr RoundingDirective to_three_places() { return RoundingDirective(Kind::ToDecimalPlaces); }

  constexpr Kind kind() const { return kind_; }
  constexpr int places() const { return kind_ == Kind::ToInteger ? 0 : 3; }

  std::string_view name() const { return kind_ == Kind::ToInteger ? "integer" : "3dp"; }

  /// Sentence prepended to English prompts.
  std::string_view instruction() const {
    return kind_ == Kind::ToInteger ? "Round the answer to an integer." : "Round the answer to three decimal places.";
  }

  static RoundingDirective parse(std::string_view name) {
    if (name == "integer") return to_integer();
    if (name == "3dp") return to_three_places();
    throw Error(ErrorKind::UnknownName, "unknown rounding directive '" + std::string(name) + "'");
  }

  friend constexpr bool operator==(RoundingDirective, RoundingDirective) = default;

 private:
  constexpr explicit RoundingDirective(Kind k) : kind_(k) {}
  Kind kind_;
};

/// Exact result of `lhs op rhs` under the directive, rounded half away from
/// zero. The result carries exactly directive.places() fraction digits.
inline ExactDecimal evaluate(const ExactDecimal& lhs, Operation op, const ExactDecimal& rhs,
                             RoundingDirective directive) {
  switch (op) {
    case Operation::Add: return add(lhs, rhs).round_to(directive.places());
    case Operation::Sub: return subtract(lhs, rhs).round_to(directive.places());
    case Operation::Mul: return multiply(lhs, rhs).round_to(directive.places());
    case Operation::Div: return divide(lhs, rhs, directive.places());
  }
  throw Error(ErrorKind::UnknownName, "bad operation");
}

/// Unrounded result for the exact operations; division has no finite exact
/// form in general, so it is returned at the directive's precision.
inline ExactDecimal exact_result(const ExactDecimal& lhs, Operation op, const ExactDecimal& rhs,
                                 RoundingDirective directive) {
  switch (op) {
    case Operation::Add: return add(lhs, rhs);
    case Operation::Sub: return subtract(lhs, rhs);
    case Operation::Mul: return multiply(lhs, rhs);
    case Operation::Div: return divide(lhs, rhs, directive.places());
  }
  throw Error(ErrorKind::UnknownName, "bad operation");
}

class ExpressionCase {
 public:
  ExpressionCase(std::int64_t id, ExactDecimal lhs, Operation op, ExactDecimal rhs, RoundingDirective directive)
      : id_(id), lhs_(std::move(lhs)), rhs_(std::move(rhs)), op_(op), directive_(directive),
        answer_(evaluate(lhs_, op_, rhs_, directive_)) {}

  std::int64_t id() const { return id_; }
  const ExactDecimal& lhs() const { return lhs_; }
  const ExactDecimal& rhs() const { return rhs_; }
  Operation op() const { return op_; }
  RoundingDirective directive() const { return directive_; }
  const ExactDecimal& answer() const { return answer_; }

  friend bool operator==(const ExpressionCase&, const ExpressionCase&) = default;

 private:
  std::int64_t id_;
  ExactDecimal lhs_;
  ExactDecimal rhs_;
  Operation op_;
  RoundingDirective directive_;
  ExactDecimal answer_;  // derived in the constructor, never set directly
};

inline int total_operand_digits(const ExpressionCase& c) { return c.lhs().digit_count() + c.rhs().digit_count(); }

}  // namespace numeralkit

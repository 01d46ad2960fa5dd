#pragma once

#include <span>
#include <string>
#include <vector>

namespace svf {

/// Compiled arithmetic expression over named variables.
///
/// Grammar: numbers, the declared variables, `pi`, binary + - * / ^
/// (^ binds tightest, right-associative), unary minus, parentheses, and
/// the functions sqrt, sin, cos. This is the input path for user-defined
/// fields (variables x1..x_{2k+2}) and user-defined charts (variables
/// u1..u_{2k+1}).
class Expression {
 public:
  /// Parses `text` against the variable list; throws std::invalid_argument
  /// with the offending position on any syntax error or unknown name.
  static Expression parse(const std::string& text,
                          const std::vector<std::string>& variables);

  /// Evaluates with values bound positionally to the declared variables.
  double evaluate(std::span<const double> values) const;

  const std::string& text() const { return text_; }

 private:
  enum class OpCode { kConst, kVar, kAdd, kSub, kMul, kDiv, kPow, kNeg,
                      kSqrt, kSin, kCos };
  struct Op {
    OpCode code;
    double constant = 0.0;
    int var_index = 0;
  };

  std::string text_;
  std::vector<Op> program_;  // postfix order

  friend class ExpressionParser;
};

}  // namespace svf

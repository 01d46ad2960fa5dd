#include "svf/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace svf {

namespace {

std::string error_at(const std::string& text, std::size_t pos,
                     const std::string& message) {
  return "expression error at position " + std::to_string(pos) + " in \"" +
         text + "\": " + message;
}

}  // namespace

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text,
                   const std::vector<std::string>& variables)
      : text_(text), variables_(variables) {}

  std::vector<Expression::Op> run() {
    std::vector<Expression::Op> program;
    parse_sum(program);
    skip_space();
    if (pos_ != text_.size()) {
      throw std::invalid_argument(error_at(text_, pos_, "trailing input"));
    }
    if (program.empty()) {
      throw std::invalid_argument(error_at(text_, 0, "empty expression"));
    }
    return program;
  }

 private:
  using Op = Expression::Op;
  using OpCode = Expression::OpCode;

  void parse_sum(std::vector<Op>& out) {
    parse_product(out);
    while (true) {
      skip_space();
      if (consume('+')) {
        parse_product(out);
        out.push_back({OpCode::kAdd});
      } else if (consume('-')) {
        parse_product(out);
        out.push_back({OpCode::kSub});
      } else {
        return;
      }
    }
  }

  void parse_product(std::vector<Op>& out) {
    parse_unary(out);
    while (true) {
      skip_space();
      if (consume('*')) {
        parse_unary(out);
        out.push_back({OpCode::kMul});
      } else if (consume('/')) {
        parse_unary(out);
        out.push_back({OpCode::kDiv});
      } else {
        return;
      }
    }
  }

  void parse_unary(std::vector<Op>& out) {
    skip_space();
    if (consume('-')) {
      parse_unary(out);
      out.push_back({OpCode::kNeg});
      return;
    }
    consume('+');
    parse_power(out);
  }

  void parse_power(std::vector<Op>& out) {
    parse_atom(out);
    skip_space();
    if (consume('^')) {
      // right-associative; exponent may carry its own unary sign
      parse_unary(out);
      out.push_back({OpCode::kPow});
    }
  }

  void parse_atom(std::vector<Op>& out) {
    skip_space();
    if (pos_ >= text_.size()) {
      throw std::invalid_argument(error_at(text_, pos_, "unexpected end"));
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      parse_sum(out);
      skip_space();
      if (!consume(')')) {
        throw std::invalid_argument(error_at(text_, pos_, "expected ')'"));
      }
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      const double value = std::strtod(begin, &end);
      if (end == begin) {
        throw std::invalid_argument(error_at(text_, pos_, "bad number"));
      }
      pos_ += static_cast<std::size_t>(end - begin);
      out.push_back({OpCode::kConst, value});
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name = text_.substr(start, pos_ - start);
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        ++pos_;
        parse_sum(out);
        skip_space();
        if (!consume(')')) {
          throw std::invalid_argument(error_at(text_, pos_, "expected ')'"));
        }
        if (name == "sqrt") {
          out.push_back({OpCode::kSqrt});
        } else if (name == "sin") {
          out.push_back({OpCode::kSin});
        } else if (name == "cos") {
          out.push_back({OpCode::kCos});
        } else {
          throw std::invalid_argument(
              error_at(text_, start, "unknown function '" + name + "'"));
        }
        return;
      }
      if (name == "pi") {
        out.push_back({OpCode::kConst, std::numbers::pi});
        return;
      }
      for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i] == name) {
          Op op{OpCode::kVar};
          op.var_index = static_cast<int>(i);
          out.push_back(op);
          return;
        }
      }
      throw std::invalid_argument(
          error_at(text_, start, "unknown variable '" + name + "'"));
    }
    throw std::invalid_argument(
        error_at(text_, pos_, std::string("unexpected character '") + c + "'"));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  const std::string& text_;
  const std::vector<std::string>& variables_;
  std::size_t pos_ = 0;
};

Expression Expression::parse(const std::string& text,
                             const std::vector<std::string>& variables) {
  Expression expr;
  expr.text_ = text;
  expr.program_ = ExpressionParser(text, variables).run();
  return expr;
}

double Expression::evaluate(std::span<const double> values) const {
  double stack[64];
  int top = 0;
  for (const Op& op : program_) {
    switch (op.code) {
      case OpCode::kConst:
        stack[top++] = op.constant;
        break;
      case OpCode::kVar:
        if (op.var_index >= static_cast<int>(values.size())) {
          throw std::invalid_argument(
              "Expression::evaluate: too few variable values");
        }
        stack[top++] = values[op.var_index];
        break;
      case OpCode::kAdd: --top; stack[top - 1] += stack[top]; break;
      case OpCode::kSub: --top; stack[top - 1] -= stack[top]; break;
      case OpCode::kMul: --top; stack[top - 1] *= stack[top]; break;
      case OpCode::kDiv: --top; stack[top - 1] /= stack[top]; break;
      case OpCode::kPow:
        --top;
        stack[top - 1] = std::pow(stack[top - 1], stack[top]);
        break;
      case OpCode::kNeg: stack[top - 1] = -stack[top - 1]; break;
      case OpCode::kSqrt: stack[top - 1] = std::sqrt(stack[top - 1]); break;
      case OpCode::kSin: stack[top - 1] = std::sin(stack[top - 1]); break;
      case OpCode::kCos: stack[top - 1] = std::cos(stack[top - 1]); break;
    }
    if (top >= 64) {
      throw std::runtime_error("Expression::evaluate: stack overflow");
    }
  }
  return stack[0];
}

}  // namespace svf

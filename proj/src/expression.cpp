#include "boundscan/expression.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <unordered_map>

namespace boundscan {

ExpressionError::ExpressionError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

using Op = Expression::Instruction::Op;

struct FunctionInfo {
  Op op;
  int arity;
};

const std::unordered_map<std::string, FunctionInfo>& function_table() {
  static const std::unordered_map<std::string, FunctionInfo> table = {
      {"sin", {Op::kSin, 1}},     {"cos", {Op::kCos, 1}},   {"tan", {Op::kTan, 1}},
      {"asin", {Op::kAsin, 1}},   {"acos", {Op::kAcos, 1}}, {"atan", {Op::kAtan, 1}},
      {"sinh", {Op::kSinh, 1}},   {"cosh", {Op::kCosh, 1}}, {"tanh", {Op::kTanh, 1}},
      {"exp", {Op::kExp, 1}},     {"log", {Op::kLog, 1}},   {"sqrt", {Op::kSqrt, 1}},
      {"abs", {Op::kAbs, 1}},     {"atan2", {Op::kAtan2, 2}}, {"pow", {Op::kPow, 2}},
      {"min", {Op::kMin, 2}},     {"max", {Op::kMax, 2}},
  };
  return table;
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables,
         std::vector<Expression::Instruction>& program)
      : text_(text), variables_(variables), program_(program) {}

  void parse() {
    parse_expr();
    skip_space();
    if (pos_ != text_.size()) {
      throw ExpressionError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) {
        throw ExpressionError(std::string("expected '") + c + "' but reached end of input", pos_);
      }
      throw ExpressionError(std::string("expected '") + c + "'", pos_);
    }
  }

  void emit(Op op, double value = 0.0, std::size_t index = 0) {
    program_.push_back({op, value, index});
  }

  void parse_expr() {
    parse_term();
    for (;;) {
      if (accept('+')) {
        parse_term();
        emit(Op::kAdd);
      } else if (accept('-')) {
        parse_term();
        emit(Op::kSub);
      } else {
        return;
      }
    }
  }

  void parse_term() {
    parse_unary();
    for (;;) {
      if (accept('*')) {
        parse_unary();
        emit(Op::kMul);
      } else if (accept('/')) {
        parse_unary();
        emit(Op::kDiv);
      } else {
        return;
      }
    }
  }

  void parse_unary() {
    if (accept('-')) {
      parse_unary();
      emit(Op::kNeg);
      return;
    }
    if (accept('+')) {
      parse_unary();
      return;
    }
    parse_power();
  }

  void parse_power() {
    parse_primary();
    if (accept('^')) {
      parse_unary();
      emit(Op::kPow);
    }
  }

  void parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ExpressionError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      parse_expr();
      expect(')');
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      parse_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      parse_identifier();
      return;
    }
    throw ExpressionError(std::string("unexpected '") + c + "'", pos_);
  }

  void parse_number() {
    const std::size_t start = pos_;
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double value = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) throw ExpressionError("malformed number", start);
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    emit(Op::kConst, value);
  }

  void parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      const auto it = function_table().find(name);
      if (it == function_table().end()) {
        throw ExpressionError("unknown function '" + name + "'", start);
      }
      ++pos_;
      parse_expr();
      for (int i = 1; i < it->second.arity; ++i) {
        expect(',');
        parse_expr();
      }
      expect(')');
      emit(it->second.op);
      return;
    }
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (variables_[i] == name) {
        emit(Op::kVar, 0.0, i);
        return;
      }
    }
    if (name == "pi") {
      emit(Op::kConst, std::numbers::pi);
      return;
    }
    if (name == "e") {
      emit(Op::kConst, std::numbers::e);
      return;
    }
    throw ExpressionError("unknown identifier '" + name + "'", start);
  }

  std::string_view text_;
  const std::vector<std::string>& variables_;
  std::vector<Expression::Instruction>& program_;
  std::size_t pos_ = 0;
};

int stack_effect(Op op) {
  switch (op) {
    case Op::kConst:
    case Op::kVar:
      return 1;
    case Op::kAdd:
    case Op::kSub:
    case Op::kMul:
    case Op::kDiv:
    case Op::kPow:
    case Op::kAtan2:
    case Op::kMin:
    case Op::kMax:
      return -1;
    default:
      return 0;
  }
}

double run(const std::vector<Expression::Instruction>& program, std::span<const double> values,
           double* stack) {
  std::size_t top = 0;
  for (const auto& ins : program) {
    switch (ins.op) {
      case Op::kConst: stack[top++] = ins.value; break;
      case Op::kVar: stack[top++] = values[ins.index]; break;
      case Op::kAdd: --top; stack[top - 1] += stack[top]; break;
      case Op::kSub: --top; stack[top - 1] -= stack[top]; break;
      case Op::kMul: --top; stack[top - 1] *= stack[top]; break;
      case Op::kDiv: --top; stack[top - 1] /= stack[top]; break;
      case Op::kPow: {
        --top;
        const double e = stack[top];
        // x^2 is the common case; keep it exact.
        stack[top - 1] = (e == 2.0) ? stack[top - 1] * stack[top - 1] : std::pow(stack[top - 1], e);
        break;
      }
      case Op::kNeg: stack[top - 1] = -stack[top - 1]; break;
      case Op::kSin: stack[top - 1] = std::sin(stack[top - 1]); break;
      case Op::kCos: stack[top - 1] = std::cos(stack[top - 1]); break;
      case Op::kTan: stack[top - 1] = std::tan(stack[top - 1]); break;
      case Op::kAsin: stack[top - 1] = std::asin(stack[top - 1]); break;
      case Op::kAcos: stack[top - 1] = std::acos(stack[top - 1]); break;
      case Op::kAtan: stack[top - 1] = std::atan(stack[top - 1]); break;
      case Op::kSinh: stack[top - 1] = std::sinh(stack[top - 1]); break;
      case Op::kCosh: stack[top - 1] = std::cosh(stack[top - 1]); break;
      case Op::kTanh: stack[top - 1] = std::tanh(stack[top - 1]); break;
      case Op::kExp: stack[top - 1] = std::exp(stack[top - 1]); break;
      case Op::kLog: stack[top - 1] = std::log(stack[top - 1]); break;
      case Op::kSqrt: stack[top - 1] = std::sqrt(stack[top - 1]); break;
      case Op::kAbs: stack[top - 1] = std::abs(stack[top - 1]); break;
      case Op::kAtan2: --top; stack[top - 1] = std::atan2(stack[top - 1], stack[top]); break;
      case Op::kMin: --top; stack[top - 1] = std::min(stack[top - 1], stack[top]); break;
      case Op::kMax: --top; stack[top - 1] = std::max(stack[top - 1], stack[top]); break;
    }
  }
  return stack[0];
}

}  // namespace

Expression Expression::parse(std::string_view text, const std::vector<std::string>& variables) {
  Expression expr;
  expr.text_ = std::string(text);
  expr.num_variables_ = variables.size();
  Parser(text, variables, expr.program_).parse();
  int depth = 0;
  for (const auto& ins : expr.program_) {
    depth += stack_effect(ins.op);
    expr.max_depth_ = std::max<std::size_t>(expr.max_depth_, static_cast<std::size_t>(depth));
  }
  return expr;
}

double Expression::evaluate(std::span<const double> values) const {
  if (values.size() < num_variables_) {
    throw DimensionError("Expression::evaluate: expected " + std::to_string(num_variables_) +
                         " values, got " + std::to_string(values.size()));
  }
  if (max_depth_ <= 32) {
    std::array<double, 32> stack;
    return run(program_, values, stack.data());
  }
  std::vector<double> stack(max_depth_);
  return run(program_, values, stack.data());
}

double evaluate_constant(std::string_view text) {
  return Expression::parse(text, {}).evaluate({});
}

}  // namespace boundscan

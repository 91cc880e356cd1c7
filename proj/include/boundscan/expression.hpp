#ifndef BOUNDSCAN_EXPRESSION_HPP_
#define BOUNDSCAN_EXPRESSION_HPP_

#include <string>
#include <string_view>

#include "boundscan/types.hpp"

namespace boundscan {

class ExpressionError : public std::runtime_error {
 public:
  ExpressionError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Arithmetic expression over named variables, compiled to a postfix program.
//
// Grammar: + - * / ^ (right associative), unary minus, parentheses, numeric
// literals, the constants pi and e, and the functions sin cos tan asin acos
// atan sinh cosh tanh exp log sqrt abs (one argument) and atan2 pow min max
// (two arguments). There are no conditionals.
class Expression {
 public:
  static Expression parse(std::string_view text, const std::vector<std::string>& variables);

  double evaluate(std::span<const double> values) const;
  std::size_t num_variables() const { return num_variables_; }
  const std::string& text() const { return text_; }

  struct Instruction {
    enum class Op : unsigned char {
      kConst, kVar, kAdd, kSub, kMul, kDiv, kPow, kNeg,
      kSin, kCos, kTan, kAsin, kAcos, kAtan, kSinh, kCosh, kTanh,
      kExp, kLog, kSqrt, kAbs, kAtan2, kMin, kMax,
    };
    Op op;
    double value = 0.0;
    std::size_t index = 0;
  };

 private:
  std::vector<Instruction> program_;
  std::size_t max_depth_ = 0;
  std::size_t num_variables_ = 0;
  std::string text_;
};

// Evaluates a constant expression such as "1-cos(pi/8)" or "-7/3".
double evaluate_constant(std::string_view text);

}  // namespace boundscan

#endif  // BOUNDSCAN_EXPRESSION_HPP_

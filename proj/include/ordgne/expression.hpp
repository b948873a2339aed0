#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ordgne {

/// Small arithmetic expression over the stacked profile variables x1..xn.
///
/// Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' ['-'] integer)?
///   primary := number | 'x' index | func '(' expr ')' | '(' expr ')'
///   func    := 'exp' | 'log'
///
/// Unary minus binds looser than '^', so `-x1^2` is `-(x1^2)`.
/// Variables are 1-based in the text and 0-based once parsed.
class Expression {
 public:
  /// Parses `text`; throws Error{ErrorKind::parse} with a column on failure.
  static Expression parse(std::string_view text);

  /// Evaluates at `vars` (0-based). Throws Error{ErrorKind::evaluation} on an
  /// out-of-range variable; non-finite results are returned as-is.
  [[nodiscard]] double evaluate(std::span<const double> vars) const;

  /// Largest 0-based variable index referenced, or -1 for constants.
  [[nodiscard]] long max_variable() const noexcept { return max_variable_; }

 private:
  enum class Op { constant, variable, negate, add, sub, mul, div, pow, exp, log };
  struct Node {
    Op op;
    double value = 0.0;      // constant
    std::size_t index = 0;   // variable
    int exponent = 0;        // pow
    int lhs = -1;
    int rhs = -1;
  };

  friend class ExpressionParser;

  [[nodiscard]] double eval_node(int id, std::span<const double> vars) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  long max_variable_ = -1;
};

}  // namespace ordgne

#include "ordgne/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "ordgne/error.hpp"

namespace ordgne {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Expression run() {
    Expression e;
    out_ = &e;
    e.root_ = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::parse,
                "expression column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int push(Expression::Node n) {
    out_->nodes_.push_back(n);
    return static_cast<int>(out_->nodes_.size()) - 1;
  }

  int binary(Op op, int lhs, int rhs) { return push({.op = op, .lhs = lhs, .rhs = rhs}); }

  int parse_expr() {
    int lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Op::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = binary(Op::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Op::mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = binary(Op::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  int parse_unary() {
    if (accept('-')) return push({.op = Op::negate, .lhs = parse_unary()});
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  int parse_power() {
    int base = parse_primary();
    if (!accept('^')) return base;
    bool negative = accept('-');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be an integer literal");
    int exponent = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
    if (ec != std::errc{} || exponent > 64) fail("exponent out of range");
    return push({.op = Op::pow, .exponent = negative ? -exponent : exponent, .lhs = base});
  }

  int parse_number() {
    std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      std::size_t exp_start = pos_;
      digits();
      if (exp_start == pos_) pos_ = mark;
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return push({.op = Op::constant, .value = value});
  }

  int parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      int inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view word = text_.substr(start, pos_ - start);
      if (word == "exp" || word == "log") {
        if (!accept('(')) fail("expected '(' after " + std::string(word));
        int arg = parse_expr();
        if (!accept(')')) fail("expected ')'");
        return push({.op = word == "exp" ? Op::exp : Op::log, .lhs = arg});
      }
      if (word.size() >= 2 && word[0] == 'x') {
        std::size_t index = 0;
        auto [ptr, ec] = std::from_chars(word.data() + 1, word.data() + word.size(), index);
        if (ec == std::errc{} && ptr == word.data() + word.size() && index >= 1) {
          long zero_based = static_cast<long>(index) - 1;
          if (zero_based > out_->max_variable_) out_->max_variable_ = zero_based;
          return push({.op = Op::variable, .index = index - 1});
        }
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(word) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Expression* out_ = nullptr;
};

Expression Expression::parse(std::string_view text) { return ExpressionParser(text).run(); }

double Expression::evaluate(std::span<const double> vars) const {
  if (max_variable_ >= static_cast<long>(vars.size())) {
    throw Error(ErrorKind::evaluation, "expression references x" +
                                           std::to_string(max_variable_ + 1) + " but only " +
                                           std::to_string(vars.size()) + " variables exist");
  }
  return eval_node(root_, vars);
}

double Expression::eval_node(int id, std::span<const double> vars) const {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  switch (n.op) {
    case Op::constant:
      return n.value;
    case Op::variable:
      return vars[n.index];
    case Op::negate:
      return -eval_node(n.lhs, vars);
    case Op::add:
      return eval_node(n.lhs, vars) + eval_node(n.rhs, vars);
    case Op::sub:
      return eval_node(n.lhs, vars) - eval_node(n.rhs, vars);
    case Op::mul:
      return eval_node(n.lhs, vars) * eval_node(n.rhs, vars);
    case Op::div:
      return eval_node(n.lhs, vars) / eval_node(n.rhs, vars);
    case Op::pow: {
      double base = eval_node(n.lhs, vars);
      double acc = 1.0;
      for (int i = 0; i < std::abs(n.exponent); ++i) acc *= base;
      return n.exponent < 0 ? 1.0 / acc : acc;
    }
    case Op::exp:
      return std::exp(eval_node(n.lhs, vars));
    case Op::log:
      return std::log(eval_node(n.lhs, vars));
  }
  return 0.0;
}

}  // namespace ordgne

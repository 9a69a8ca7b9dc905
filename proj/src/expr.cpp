#include "fstar/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "fstar/errors.hpp"

namespace fstar {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expr run() {
    expr_.source_ = std::string(text_);
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_, {"expression"});
    expr_.root_ = parse_expr();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_,
                       {"operator", "end of input"});
    }
    return std::move(expr_);
  }

 private:
  using Op = Expr::Op;

  int add(Op op, double value = 0.0, int lhs = -1, int rhs = -1) {
    expr_.nodes_.push_back({op, value, lhs, rhs});
    return static_cast<int>(expr_.nodes_.size()) - 1;
  }

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

  int parse_expr() {
    int lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = add(Op::add, 0.0, lhs, parse_term());
      } else if (accept('-')) {
        lhs = add(Op::sub, 0.0, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = add(Op::mul, 0.0, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = add(Op::div, 0.0, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  int parse_unary() {
    if (accept('-')) return add(Op::neg, 0.0, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  int parse_power() {
    int base = parse_primary();
    if (accept('^')) return add(Op::pow, 0.0, base, parse_unary());
    return base;
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) {
      throw ParseError("unexpected end of input", pos_, {"number", "n", "function", "'('"});
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      int inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "n") return add(Op::variable);
      Op fn;
      if (word == "sqrt") {
        fn = Op::sqrt;
      } else if (word == "exp") {
        fn = Op::exp;
      } else if (word == "ln") {
        fn = Op::ln;
      } else {
        throw ParseError("unknown identifier '" + std::string(word) + "'", start,
                         {"n", "sqrt", "exp", "ln"});
      }
      expect('(');
      int arg = parse_expr();
      expect(')');
      return add(fn, 0.0, arg);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_,
                     {"number", "n", "function", "'('"});
  }

  int parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t probe = pos_ + 1;
      if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) ++probe;
      if (probe < text_.size() && std::isdigit(static_cast<unsigned char>(text_[probe]))) {
        pos_ = probe;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw ParseError("malformed number", start, {"number"});
    return add(Op::constant, value);
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError("missing '" + std::string(1, c) + "'", pos_, {"'" + std::string(1, c) + "'"});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Expr expr_;
};

Expr Expr::parse(std::string_view text) { return ExprParser(text).run(); }

std::optional<double> Expr::constant_value(int index) const {
  const Node& node = nodes_[static_cast<std::size_t>(index)];
  if (node.op == Op::variable) return std::nullopt;
  if (node.op == Op::constant) return node.value;
  auto lhs = constant_value(node.lhs);
  if (!lhs) return std::nullopt;
  std::optional<double> rhs;
  if (node.rhs >= 0) {
    rhs = constant_value(node.rhs);
    if (!rhs) return std::nullopt;
  }
  return eval_node<double>(index, 0.0);
}

}  // namespace fstar

#pragma once

// Arithmetic expressions in one real variable `n`.
//
// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?          (right associative)
//   primary := number | 'n' | func '(' expr ')' | '(' expr ')'
//   func    := 'sqrt' | 'exp' | 'ln'

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fstar/series.hpp"

namespace fstar {

class Expr {
 public:
  enum class Op : std::uint8_t { constant, variable, add, sub, mul, div, pow, neg, sqrt, exp, ln };

  struct Node {
    Op op;
    double value = 0.0;  // constant payload
    int lhs = -1;
    int rhs = -1;
  };

  /// Throws ParseError with the offending position.
  static Expr parse(std::string_view text);

  const std::string& source() const { return source_; }

  template <class T>
  T evaluate(const T& n) const {
    return eval_node<T>(root_, n);
  }

  /// Value of a subtree that does not reference `n`, if any.
  std::optional<double> constant_value(int node) const;

 private:
  friend class ExprParser;

  template <class T>
  T eval_node(int index, const T& n) const {
    using std::exp;
    using std::log;
    using std::sqrt;
    const Node& node = nodes_[static_cast<std::size_t>(index)];
    switch (node.op) {
      case Op::constant:
        return n * 0.0 + node.value;
      case Op::variable:
        return n;
      case Op::add:
        return eval_node<T>(node.lhs, n) + eval_node<T>(node.rhs, n);
      case Op::sub:
        return eval_node<T>(node.lhs, n) - eval_node<T>(node.rhs, n);
      case Op::mul:
        return eval_node<T>(node.lhs, n) * eval_node<T>(node.rhs, n);
      case Op::div:
        return eval_node<T>(node.lhs, n) / eval_node<T>(node.rhs, n);
      case Op::neg:
        return -eval_node<T>(node.lhs, n);
      case Op::sqrt:
        return sqrt(eval_node<T>(node.lhs, n));
      case Op::exp:
        return exp(eval_node<T>(node.lhs, n));
      case Op::ln:
        return log(eval_node<T>(node.lhs, n));
      case Op::pow: {
        T base = eval_node<T>(node.lhs, n);
        if (auto e = constant_value(node.rhs)) {
          if (*e == std::round(*e) && std::abs(*e) <= 64.0) return ipow(base, static_cast<long>(*e));
          return pow_const(base, *e);
        }
        return exp(log(base) * eval_node<T>(node.rhs, n));
      }
    }
    return n;
  }

  static double pow_const(double base, double e) { return std::pow(base, e); }
  template <class T>
  static T pow_const(const T& base, double e) {
    return pow(base, e);
  }

  std::vector<Node> nodes_;
  int root_ = -1;
  std::string source_;
};

}  // namespace fstar

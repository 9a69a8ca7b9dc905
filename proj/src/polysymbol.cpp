#include "fstar/polysymbol.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "fstar/errors.hpp"

namespace fstar {

PolySymbol PolySymbol::constant(Complex c) {
  PolySymbol s;
  s.add_term({0, 0}, c);
  return s;
}

PolySymbol PolySymbol::q() {
  PolySymbol s;
  s.add_term({1, 0}, 1.0);
  return s;
}

PolySymbol PolySymbol::p() {
  PolySymbol s;
  s.add_term({0, 1}, 1.0);
  return s;
}

PolySymbol PolySymbol::a() {
  const double r = 1.0 / std::sqrt(2.0);
  PolySymbol s;
  s.add_term({1, 0}, r);
  s.add_term({0, 1}, Complex(0.0, r));
  return s;
}

PolySymbol PolySymbol::a_bar() {
  const double r = 1.0 / std::sqrt(2.0);
  PolySymbol s;
  s.add_term({1, 0}, r);
  s.add_term({0, 1}, Complex(0.0, -r));
  return s;
}

void PolySymbol::add_term(Monomial m, Complex c) {
  if (m.first < 0 || m.second < 0) throw std::invalid_argument("negative monomial degree");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (c != Complex(0.0)) terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == Complex(0.0)) terms_.erase(it);
}

Complex PolySymbol::coefficient(int q_degree, int p_degree) const {
  auto it = terms_.find({q_degree, p_degree});
  return it == terms_.end() ? Complex(0.0) : it->second;
}

int PolySymbol::max_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.first + m.second);
  return d;
}

Complex PolySymbol::evaluate(double q, double p) const {
  Complex acc = 0.0;
  for (const auto& [m, c] : terms_) acc += c * std::pow(q, m.first) * std::pow(p, m.second);
  return acc;
}

PolySymbol PolySymbol::derivative(int q_order, int p_order) const {
  PolySymbol r;
  for (const auto& [m, c] : terms_) {
    if (m.first < q_order || m.second < p_order) continue;
    double factor = 1.0;
    for (int t = 0; t < q_order; ++t) factor *= m.first - t;
    for (int t = 0; t < p_order; ++t) factor *= m.second - t;
    r.add_term({m.first - q_order, m.second - p_order}, factor * c);
  }
  return r;
}

PolySymbol& PolySymbol::operator+=(const PolySymbol& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PolySymbol& PolySymbol::operator-=(const PolySymbol& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PolySymbol operator-(const PolySymbol& a) { return Complex(-1.0) * a; }

PolySymbol operator*(const PolySymbol& a, const PolySymbol& b) {
  PolySymbol r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term({ma.first + mb.first, ma.second + mb.second}, ca * cb);
  }
  return r;
}

PolySymbol operator*(Complex s, const PolySymbol& a) {
  PolySymbol r;
  for (const auto& [m, c] : a.terms_) r.add_term(m, s * c);
  return r;
}

PolySymbol PolySymbol::pruned(double eps) const {
  PolySymbol r;
  for (const auto& [m, c] : terms_) {
    if (std::abs(c) > eps) r.terms_.emplace(m, c);
  }
  return r;
}

double PolySymbol::max_coefficient_diff(const PolySymbol& a, const PolySymbol& b) {
  double d = 0.0;
  for (const auto& [m, c] : (a - b).terms_) d = std::max(d, std::abs(c));
  return d;
}

namespace {

class SymbolParser {
 public:
  explicit SymbolParser(std::string_view text) : text_(text) {}

  PolySymbol run() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty symbol", pos_, {"expression"});
    PolySymbol s = parse_expr();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_, {"operator", "end of input"});
    }
    return s;
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

  PolySymbol parse_expr() {
    PolySymbol lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs += parse_term();
      } else if (accept('-')) {
        lhs -= parse_term();
      } else {
        return lhs;
      }
    }
  }

  PolySymbol parse_term() {
    PolySymbol lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * parse_unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        const PolySymbol rhs = parse_unary();
        if (rhs.max_degree() != 0) {
          throw ParseError(rhs.is_zero() ? "division by zero" : "division by a non-constant polynomial", at,
                           {"non-zero constant"});
        }
        lhs = (Complex(1.0) / rhs.coefficient(0, 0)) * lhs;
      } else {
        return lhs;
      }
    }
  }

  PolySymbol parse_unary() {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  PolySymbol parse_power() {
    PolySymbol base = parse_primary();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("exponent must be a non-negative integer", start, {"integer"});
    int e = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, e);
    if (ec != std::errc() || e > 64) throw ParseError("exponent out of range", start, {"integer <= 64"});
    PolySymbol r = PolySymbol::constant(1.0);
    for (int t = 0; t < e; ++t) r = r * base;
    return r;
  }

  PolySymbol parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_, {"number", "q", "p", "i", "'('"});
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      PolySymbol inner = parse_expr();
      if (!accept(')')) throw ParseError("missing ')'", pos_, {"')'"});
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "q") return PolySymbol::q();
      if (word == "p") return PolySymbol::p();
      if (word == "i") return PolySymbol::constant(Complex(0.0, 1.0));
      throw ParseError("unknown identifier '" + std::string(word) + "'", start, {"q", "p", "i"});
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_, {"number", "q", "p", "i", "'('"});
  }

  PolySymbol parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
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
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_) throw ParseError("malformed number", start, {"number"});
    return PolySymbol::constant(v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_coefficient(Complex c) {
  if (c.imag() == 0.0) return "(" + format_number(c.real()) + ")";
  if (c.real() == 0.0) return "(" + format_number(c.imag()) + "*i)";
  return "(" + format_number(c.real()) + "+" + format_number(c.imag()) + "*i)";
}

}  // namespace

PolySymbol parse_symbol(std::string_view text) { return SymbolParser(text).run(); }

std::string to_string(const PolySymbol& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    out += format_coefficient(c);
    if (m.first > 0) out += "*q^" + std::to_string(m.first);
    if (m.second > 0) out += "*p^" + std::to_string(m.second);
  }
  return out;
}

PolySymbol moyal_exact(const PolySymbol& k, const PolySymbol& g, double hbar) {
  PolySymbol result;
  const int top = std::min(k.max_degree(), g.max_degree());
  Complex scale = 1.0;  // (i hbar / 2)^m / m!
  for (int m = 0; m <= top; ++m) {
    if (m > 0) scale *= Complex(0.0, 0.5 * hbar) / static_cast<double>(m);
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
      const double sign = (j & 1) ? -1.0 : 1.0;
      const PolySymbol term = k.derivative(m - j, j) * g.derivative(j, m - j);
      result += (scale * (sign * binom)) * term;
      binom = binom * (m - j) / (j + 1);
    }
  }
  return result;
}

namespace {

class PolynomialSymbol final : public Symbol {
 public:
  explicit PolynomialSymbol(const PolySymbol& poly) {
    const int top = std::min(std::max(poly.max_degree(), 0), Partials::kMaxOrder);
    for (int k = 0; k <= Partials::kMaxOrder; ++k) {
      for (int b = 0; b <= k; ++b) {
        std::vector<Term> terms;
        if (k <= top) {
          const PolySymbol d = poly.derivative(k - b, b);
          for (const auto& [m, c] : d.terms()) terms.push_back({m.first, m.second, c});
        }
        derivatives_.push_back(std::move(terms));
      }
    }
  }

  Partials partials(double q, double p, int order) const override {
    Partials r(order);
    std::size_t slot = 0;
    for (int k = 0; k <= order; ++k) {
      for (int b = 0; b <= k; ++b, ++slot) {
        Complex acc = 0.0;
        for (const Term& t : derivatives_[slot]) acc += t.c * ipow_real(q, t.qd) * ipow_real(p, t.pd);
        r(k - b, b) = acc;
      }
    }
    return r;
  }

 private:
  struct Term {
    int qd;
    int pd;
    Complex c;
  };

  static double ipow_real(double x, int e) {
    double r = 1.0;
    for (int t = 0; t < e; ++t) r *= x;
    return r;
  }

  // Indexed like Partials: slot k(k+1)/2 + b holds d^{k-b}_q d^b_p.
  std::vector<std::vector<Term>> derivatives_;
};

}  // namespace

SymbolPtr make_symbol(const PolySymbol& poly) { return std::make_shared<PolynomialSymbol>(poly); }

}  // namespace fstar

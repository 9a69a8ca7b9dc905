#pragma once

// Exact polynomials in (q, p) with complex coefficients and the Moyal product
// on them.

#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "fstar/symbol.hpp"

namespace fstar {

class PolySymbol {
 public:
  using Monomial = std::pair<int, int>;  // (q degree, p degree)

  PolySymbol() = default;
  static PolySymbol constant(Complex c);
  static PolySymbol q();
  static PolySymbol p();
  /// a = (q + i p)/sqrt(2)
  static PolySymbol a();
  /// conj(a) = (q - i p)/sqrt(2)
  static PolySymbol a_bar();

  const std::map<Monomial, Complex>& terms() const { return terms_; }
  Complex coefficient(int q_degree, int p_degree) const;
  /// Highest total degree; -1 for the zero polynomial.
  int max_degree() const;
  bool is_zero() const { return terms_.empty(); }

  Complex evaluate(double q, double p) const;
  PolySymbol derivative(int q_order, int p_order) const;

  PolySymbol& operator+=(const PolySymbol& o);
  PolySymbol& operator-=(const PolySymbol& o);
  friend PolySymbol operator+(PolySymbol a, const PolySymbol& b) { return a += b; }
  friend PolySymbol operator-(PolySymbol a, const PolySymbol& b) { return a -= b; }
  friend PolySymbol operator-(const PolySymbol& a);
  friend PolySymbol operator*(const PolySymbol& a, const PolySymbol& b);
  friend PolySymbol operator*(Complex s, const PolySymbol& a);

  /// Drops coefficients with |c| <= eps (eps = 0 removes exact zeros only).
  PolySymbol pruned(double eps) const;

  /// Largest |coefficient difference|.
  static double max_coefficient_diff(const PolySymbol& a, const PolySymbol& b);

 private:
  void add_term(Monomial m, Complex c);
  std::map<Monomial, Complex> terms_;
};

/// Grammar: q, p, i, numeric literals, + - * /, ^ with non-negative integer
/// exponents, parentheses. Division only by constants. Throws ParseError.
PolySymbol parse_symbol(std::string_view text);

/// Canonical text; parse_symbol(to_string(s)) reproduces s exactly.
std::string to_string(const PolySymbol& s);

/// Full Moyal series sum_m (i hbar/2)^m/m! sum_j (-1)^j C(m,j)
/// (d_q^{m-j} d_p^j k)(d_p^{m-j} d_q^j g); terminates on polynomials.
PolySymbol moyal_exact(const PolySymbol& k, const PolySymbol& g, double hbar);

/// Adapter so polynomials can feed analytic-derivative consumers.
SymbolPtr make_symbol(const PolySymbol& poly);

}  // namespace fstar

#include <doctest.h>

#include <random>

#include "fstar/errors.hpp"
#include "fstar/polysymbol.hpp"

using namespace fstar;

namespace {

PolySymbol random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::bernoulli_distribution keep(0.6);
  PolySymbol s;
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) {
      if (!keep(rng)) continue;
      PolySymbol m = PolySymbol::constant(Complex(u(rng), keep(rng) ? u(rng) : 0.0));
      for (int t = 0; t < a; ++t) m = m * PolySymbol::q();
      for (int t = 0; t < b; ++t) m = m * PolySymbol::p();
      s += m;
    }
  }
  return s;
}

}  // namespace

TEST_SUITE("polysymbol") {
  TEST_CASE("parse examples") {
    const auto q = parse_symbol("q");
    CHECK(q.terms().size() == 1);
    CHECK(q.coefficient(1, 0) == Complex(1.0));
    const auto h = parse_symbol("(q^2+p^2)/2");
    CHECK(h.terms().size() == 2);
    CHECK(h.coefficient(2, 0) == Complex(0.5));
    CHECK(h.coefficient(0, 2) == Complex(0.5));
    const auto a2 = parse_symbol("(q+i*p)^2");
    CHECK(a2.coefficient(2, 0) == Complex(1.0));
    CHECK(a2.coefficient(1, 1) == Complex(0.0, 2.0));
    CHECK(a2.coefficient(0, 2) == Complex(-1.0));
    CHECK(parse_symbol("q - q").is_zero());
    CHECK(parse_symbol("-2.5e-1*p").coefficient(0, 1) == Complex(-0.25));
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_symbol(""), ParseError);
    CHECK_THROWS_AS(parse_symbol("q/p"), ParseError);
    CHECK_THROWS_AS(parse_symbol("q/0"), ParseError);
    CHECK_THROWS_AS(parse_symbol("q^-1"), ParseError);
    CHECK_THROWS_AS(parse_symbol("q^1.5"), ParseError);
    CHECK_THROWS_AS(parse_symbol("(q+p"), ParseError);
    try {
      (void)parse_symbol("q + x");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.position() == 4);
    }
  }

  TEST_CASE("to_string round trips exactly") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
      const PolySymbol s = random_poly(rng, 4);
      const PolySymbol back = parse_symbol(to_string(s));
      CHECK(PolySymbol::max_coefficient_diff(s, back) == 0.0);
    }
    CHECK(to_string(PolySymbol()) == "0");
  }

  TEST_CASE("moyal_exact examples") {
    const double hbar = 0.3;
    const auto q = PolySymbol::q();
    const auto p = PolySymbol::p();
    CHECK(PolySymbol::max_coefficient_diff(moyal_exact(q, q, hbar), q * q) == 0.0);
    const auto qp = moyal_exact(q, p, hbar);
    CHECK(qp.coefficient(1, 1) == Complex(1.0));
    CHECK(qp.coefficient(0, 0) == Complex(0.0, hbar / 2));
    for (double h : {1.0, 0.1, 1e-3}) {
      const auto c = Complex(1.0 / h) *
                     (moyal_exact(PolySymbol::a(), PolySymbol::a_bar(), h) - moyal_exact(PolySymbol::a_bar(), PolySymbol::a(), h));
      CHECK(PolySymbol::max_coefficient_diff(c, PolySymbol::constant(1.0)) < 1e-15);
    }
  }

  TEST_CASE("moyal_exact is associative on random polynomials") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
      const auto k = random_poly(rng, 4), g = random_poly(rng, 4), h = random_poly(rng, 4);
      const auto left = moyal_exact(moyal_exact(k, g, 0.7), h, 0.7);
      const auto right = moyal_exact(k, moyal_exact(g, h, 0.7), 0.7);
      double scale = 1.0;
      for (const auto& [m, c] : left.terms()) scale = std::max(scale, std::abs(c));
      CHECK(PolySymbol::max_coefficient_diff(left, right) / scale < 1e-12);
    }
  }

  TEST_CASE("moyal_exact respects conjugation") {
    // conj(k * g) = conj(g) * conj(k) for the Moyal product.
    std::mt19937_64 rng(3);
    auto conjugate = [](const PolySymbol& s) {
      PolySymbol r;
      for (const auto& [m, c] : s.terms()) {
        PolySymbol t = PolySymbol::constant(std::conj(c));
        for (int k = 0; k < m.first; ++k) t = t * PolySymbol::q();
        for (int k = 0; k < m.second; ++k) t = t * PolySymbol::p();
        r += t;
      }
      return r;
    };
    for (int t = 0; t < 30; ++t) {
      const auto k = random_poly(rng, 3), g = random_poly(rng, 3);
      const auto lhs = conjugate(moyal_exact(k, g, 0.5));
      const auto rhs = moyal_exact(conjugate(g), conjugate(k), 0.5);
      CHECK(PolySymbol::max_coefficient_diff(lhs, rhs) < 1e-12);
    }
  }

  TEST_CASE("polynomial symbol partials") {
    const auto s = make_symbol(parse_symbol("q^3*p - 2*p^2 + i*q"));
    const Partials d = s->partials(1.5, -0.5, 3);
    CHECK(d.value() == Complex(1.5 * 1.5 * 1.5 * -0.5 - 2 * 0.25, 1.5));
    CHECK(d(1, 0) == Complex(3 * 1.5 * 1.5 * -0.5, 1.0));
    CHECK(d(2, 1) == Complex(6 * 1.5));
    CHECK(d(0, 2) == Complex(-4.0));
    CHECK(d(3, 0) == Complex(-3.0));
  }
}

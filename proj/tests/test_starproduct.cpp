#include <doctest.h>

#include <cmath>
#include <memory>

#include "fstar/errors.hpp"
#include "fstar/kernels.hpp"
#include "fstar/phasespace.hpp"
#include "fstar/starproduct.hpp"
#include "testing.hpp"

using namespace fstar;
using fstar::testing::max_abs_diff;
using fstar::testing::square_grid;

namespace {

Field poly_field(const PhaseGrid& g, const char* text) {
  return Field::from_symbol(g, make_symbol(parse_symbol(text)), text);
}

}  // namespace

TEST_SUITE("starproduct") {
  TEST_CASE("parse_star_order") {
    CHECK(parse_star_order("first") == StarOrder::first);
    CHECK(parse_star_order("second") == StarOrder::second);
    CHECK(parse_star_order("exact") == StarOrder::exact);
    CHECK_THROWS_AS(parse_star_order("third"), ParseError);
  }

  TEST_CASE("moyal_apply examples") {
    const PhaseGrid g = square_grid(6.0, 129);
    const auto w0 = fock_wigner(0, g);
    CHECK(max_abs_diff(moyal_apply(PolySymbol::constant(1.0), w0, 1.0).values(), w0.values()) == 0.0);

    const auto h = moyal_apply(parse_symbol("(q^2+p^2)/2"), w0, 1.0);
    CHECK(max_abs_diff(h.values(), (Complex(0.5) * w0).values()) < 1e-8);

    const auto qw = moyal_apply(PolySymbol::q(), w0, 0.7);
    const auto [dq, dp] = gradient(w0, DerivativeMethod::analytic_radial);
    double worst = 0.0;
    for (int i = 0; i < g.n_q; ++i) {
      for (int j = 0; j < g.n_p; ++j) {
        const Complex expect = g.q(i) * w0.at(i, j) + Complex(0.0, 0.35) * dp.at(i, j);
        worst = std::max(worst, std::abs(qw.at(i, j) - expect));
      }
    }
    CHECK(worst < 1e-14);
  }

  TEST_CASE("moyal_apply on Fock states gives the spectrum") {
    const PhaseGrid g = default_grid();
    for (int n : {2, 7}) {
      const auto w = fock_wigner(n, g);
      const auto hw = moyal_apply(parse_symbol("(q^2+p^2)/2"), w, 1.0);
      const auto r = hw - Complex(n + 0.5) * w;
      CHECK(kernels::stats(g, r.values(), 16.0).max_abs < 1e-8);
    }
  }

  TEST_CASE("fstar_apply examples") {
    const PhaseGrid g = square_grid(3.0, 33);
    const auto q = poly_field(g, "q");
    const auto p = poly_field(g, "p");

    const auto id = fstar_apply(q, p, DeformationSpec::identity(), 0.4, StarOrder::first);
    double worst = 0.0;
    for (int i = 0; i < g.n_q; ++i) {
      for (int j = 0; j < g.n_p; ++j) worst = std::max(worst, std::abs(id.at(i, j) - Complex(g.q(i) * g.p(j), 0.2)));
    }
    CHECK(worst < 1e-15);

    // Radial operands: the bracket vanishes and the product is pointwise.
    const auto w1 = fock_wigner(1, g);
    const auto w2 = fock_wigner(2, g);
    const auto rad = fstar_apply(w1, w2, DeformationSpec::sqrt_n(), 1.0, StarOrder::first);
    CHECK(max_abs_diff(rad.values(), (w1 * w2).values()) < 1e-14);

    // A point with (q^2 + p^2)/2 = 1.
    PhaseGrid one;
    one.q_min = one.p_min = 1.0;
    one.q_max = one.p_max = 5.0;
    one.n_q = one.n_p = 5;
    one.offset = 0.0;  // samples at 1, 2, 3, ...
    const auto sq = fstar_apply(poly_field(one, "q"), poly_field(one, "p"), DeformationSpec::sqrt_n(), 1.0, StarOrder::first);
    const Complex v = sq.at(0, 0);
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(0.5 * 2.1213203435596426).epsilon(1e-15));
  }

  TEST_CASE("exact order is rejected for fields") {
    const PhaseGrid g = square_grid(1.0, 9);
    const auto q = poly_field(g, "q");
    CHECK_THROWS_AS(fstar_apply(q, q, DeformationSpec::identity(), 1.0, StarOrder::exact), std::invalid_argument);
  }

  TEST_CASE("singular amplitude is reported") {
    PhaseGrid g = square_grid(1.0, 5);
    g.offset = 0.0;  // contains the origin, where F diverges for sqrt_n
    const auto q = poly_field(g, "q");
    CHECK_THROWS_AS(fstar_apply(q, q, DeformationSpec::sqrt_n(), 1.0, StarOrder::first), SingularAmplitude);
  }

  TEST_CASE("star_commutator") {
    const PhaseGrid g = square_grid(4.0, 65);
    const auto a = Field::from_symbol(g, make_symbol(PolySymbol::a()), "a");
    const auto ab = Field::from_symbol(g, make_symbol(PolySymbol::a_bar()), "a_bar");
    const auto c = star_commutator(a, ab, DeformationSpec::identity(), 0.25, StarOrder::first);
    for (const Complex& v : c.values()) CHECK(std::abs(v - 1.0) < 1e-12);
    const auto zero = star_commutator(a, a, DeformationSpec::qdef(1.2), 1.0, StarOrder::first);
    for (const Complex& v : zero.values()) CHECK(std::abs(v) == 0.0);
  }

  TEST_CASE("second order reproduces the Moyal second-order term") {
    // With F = 1 the truncation to second order is exact on quadratics.
    const PhaseGrid g = square_grid(2.0, 17);
    const auto k = parse_symbol("q^2 + 2*q*p");
    const auto h = parse_symbol("p^2 - q");
    const auto star = fstar_apply(Field::from_symbol(g, make_symbol(k), "k"), Field::from_symbol(g, make_symbol(h), "h"),
                                  DeformationSpec::identity(), 0.6, StarOrder::second);
    const auto exact = moyal_exact(k, h, 0.6);
    double worst = 0.0;
    for (int i = 0; i < g.n_q; ++i) {
      for (int j = 0; j < g.n_p; ++j) worst = std::max(worst, std::abs(star.at(i, j) - exact.evaluate(g.q(i), g.p(j))));
    }
    CHECK(worst < 1e-13);
  }

  TEST_CASE("nested products keep analytic symbols") {
    const PhaseGrid g = square_grid(2.0, 17);
    const auto q = poly_field(g, "q");
    const auto p = poly_field(g, "p");
    const auto qp = fstar_apply(q, p, DeformationSpec::identity(), 1.0, StarOrder::first);
    REQUIRE(qp.has_symbol());
    // Identity deformation: (q*p)*q = q^2 p + i hbar q / 2 ... compare with exact Moyal.
    const auto nested = fstar_apply(qp, q, DeformationSpec::identity(), 1.0, StarOrder::first);
    const auto exact = moyal_exact(moyal_exact(PolySymbol::q(), PolySymbol::p(), 1.0), PolySymbol::q(), 1.0);
    double worst = 0.0;
    for (int i = 0; i < g.n_q; ++i) {
      for (int j = 0; j < g.n_p; ++j) worst = std::max(worst, std::abs(nested.at(i, j) - exact.evaluate(g.q(i), g.p(j))));
    }
    CHECK(worst < 1e-14);
  }

  TEST_CASE("amplitude field carries an exact radial profile") {
    const PhaseGrid g = square_grid(3.0, 17, 0.5);
    const auto amp = amplitude_field(DeformationSpec::qdef(1.2), g, 0.5);
    const double q = g.q(3), p = g.p(12);
    const double n = number_symbol(q, p, 0.5);
    CHECK(amp.at(3, 12).real() == doctest::Approx(amplitude_F(DeformationSpec::qdef(1.2), n)).epsilon(1e-14));
    const Partials d = amp.symbol()->partials(q, p, 1);
    const double h = 1e-5;
    const double fd = (amplitude_F(DeformationSpec::qdef(1.2), number_symbol(q + h, p, 0.5)) -
                       amplitude_F(DeformationSpec::qdef(1.2), number_symbol(q - h, p, 0.5))) /
                      (2 * h);
    CHECK(d(1, 0).real() == doctest::Approx(fd).epsilon(1e-7));
  }
}

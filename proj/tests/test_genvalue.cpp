#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include <json.hpp>

#include "fstar/errors.hpp"
#include "fstar/genvalue.hpp"
#include "fstar/io.hpp"
#include "fstar/phasespace.hpp"
#include "testing.hpp"

using namespace fstar;
using fstar::testing::square_grid;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PhaseGrid aligned_grid(double half, int n) {
  PhaseGrid g = square_grid(half, n);
  g.offset = 0.0;
  return g;
}

Field poly_field(const PhaseGrid& g, const char* text) {
  return Field::from_symbol(g, make_symbol(parse_symbol(text)), text);
}

}  // namespace

TEST_SUITE("genvalue") {
  TEST_CASE("build_hamiltonian examples") {
    const PhaseGrid g = aligned_grid(2.0, 5);  // samples at -2..2
    const auto h = build_hamiltonian(DeformationSpec::identity(), g, 1.0);
    CHECK(h.field.at(3, 3).real() == doctest::Approx(1.5));  // (1,1)
    CHECK(h.field.at(2, 2).real() == doctest::Approx(0.5));  // origin
    for (int i = 0; i < g.n_q; ++i) {
      for (int j = 0; j < g.n_p; ++j) {
        const double r2 = g.q(i) * g.q(i) + g.p(j) * g.p(j);
        CHECK(h.field.at(i, j).real() == doctest::Approx(r2 / 2 + 0.5).epsilon(1e-15));
      }
    }
    const auto s = build_hamiltonian(DeformationSpec::sqrt_n(), g, 1.0);
    CHECK(s.field.at(3, 3).real() == doctest::Approx(2.5));
  }

  TEST_CASE("hamiltonian is real and radial") {
    const PhaseGrid g = square_grid(5.0, 41, 0.7);
    for (const auto& spec : registry_specs()) {
      const auto h = build_hamiltonian(spec, g, 1.3);
      for (int i = 0; i < g.n_q - 1; ++i) {
        for (int j = 0; j < g.n_p - 1; ++j) {
          const Complex v = h.field.at(i, j);
          CHECK(v.imag() == 0.0);
          const Complex m = h.field.at(g.n_q - 2 - i, j);
          CHECK(std::abs(v - m) <= 1e-12 * std::max(1.0, std::abs(v)));
          CHECK(std::abs(v - h.field.at(j, i)) <= 1e-12 * std::max(1.0, std::abs(v)));
        }
      }
    }
  }

  TEST_CASE("Moyal genvalue is exact for the identity deformation") {
    const PhaseGrid g = default_grid();
    for (int n : {0, 3, 10}) {
      const auto r = genvalue_residual(DeformationSpec::identity(), n, g, 1.0, StarOrder::first);
      CHECK(r.max_abs <= 1e-8);
      CHECK(r.imag_max <= 1e-10);
      CHECK(r.identity_name == "genvalue/moyal");
      CHECK(r.order == StarOrder::exact);
      CHECK(r.extra("energy").value() == n + 0.5);
    }
  }

  TEST_CASE("imaginary part vanishes for deformed specs") {
    const PhaseGrid g = square_grid(8.0, 257);
    for (const auto& spec : registry_specs()) {
      const auto r = genvalue_residual(spec, 4, g, 1.0, StarOrder::first);
      CHECK(r.imag_max <= 1e-10);
    }
  }

  TEST_CASE("energy in the report agrees with the closed form") {
    const PhaseGrid g = square_grid(6.0, 65);
    for (int n : {0, 1, 5}) {
      const auto r = genvalue_residual(DeformationSpec::sqrt_n(), n, g, 1.0, StarOrder::first);
      const double closed = ((n + 1.0) * (n + 1.0) + double(n) * n) / 2.0;
      CHECK(std::abs(r.extra("energy").value() - closed) <= 1e-12 * closed);
    }
  }

  TEST_CASE("first-order sqrt_n residual equals the pointwise oracle") {
    const PhaseGrid g = square_grid(6.0, 129);
    const auto spec = DeformationSpec::sqrt_n();
    const auto r = genvalue_residual_field(spec, 1, g, 1.0, StarOrder::first);
    const auto h = build_hamiltonian(spec, g, 1.0);
    const auto w = fock_wigner(1, g);
    const auto oracle = h.field * w - Complex(2.5) * w;
    CHECK(fstar::testing::max_abs_diff(r.values(), oracle.values()) < 1e-12);
  }

  TEST_CASE("sqrt_n residual norms match the golden values") {
    std::ifstream in(std::string(FSTAR_GOLDEN_DIR) + "/residual_sqrt_n.json");
    REQUIRE(in.good());
    const auto golden = nlohmann::json::parse(in);
    for (const auto& entry : golden["cases"]) {
      const int n = entry["n"].get<int>();
      const auto r = genvalue_residual(DeformationSpec::sqrt_n(), n, default_grid(), 1.0, StarOrder::first);
      CHECK(std::abs(r.max_abs - entry["max_abs"].get<double>()) <= 1e-9);
      CHECK(std::abs(r.l2 - entry["l2"].get<double>()) <= 1e-9);
      CHECK(r.max_abs > 0.0);
    }
  }

  TEST_CASE("residual report invariants") {
    const PhaseGrid g = square_grid(5.0, 65);
    const auto r = genvalue_residual(DeformationSpec::qdef(1.2), 2, g, 1.0, StarOrder::first, 3.0);
    CHECK(r.max_abs >= 0.0);
    CHECK(r.l2 >= 0.0);
    bool on_grid = false;
    for (int i = 0; i < g.n_q; ++i) {
      for (int j = 0; j < g.n_p; ++j) on_grid = on_grid || (g.q(i) == r.witness.q && g.p(j) == r.witness.p);
    }
    CHECK(on_grid);
    CHECK(r.witness.q * r.witness.q + r.witness.p * r.witness.p <= 9.0);
    CHECK(r.extra("r_cut").value() == 3.0);
    CHECK_THROWS_AS(genvalue_residual(DeformationSpec::sqrt_n(), -1, g, 1.0, StarOrder::first), OutOfRange);
  }

  TEST_CASE("bracket_term examples") {
    const PhaseGrid g = aligned_grid(2.0, 5);
    const auto c = bracket_term(poly_field(g, "q"), poly_field(g, "p"), DeformationSpec::identity(), 0.8);
    for (const Complex& v : c.values()) CHECK(std::abs(v - Complex(0.0, 0.4)) < 1e-15);
    const auto d = bracket_term(poly_field(g, "q^2"), poly_field(g, "p^2"), DeformationSpec::identity(), 1.0);
    CHECK(std::abs(d.at(3, 3) - Complex(0.0, 2.0)) < 1e-15);

    const PhaseGrid h = square_grid(4.0, 33);
    const auto radial = bracket_term(fock_wigner(2, h), fock_wigner(3, h), DeformationSpec::sqrt_n(), 1.0);
    CHECK(kernels::stats(h, radial.values(), kInf).max_abs <= 1e-12);
  }

  TEST_CASE("commutator report") {
    const PhaseGrid g = square_grid(5.0, 65);
    const auto id = commutator_report(DeformationSpec::identity(), g, StarOrder::first);
    CHECK(id.report.max_abs <= 1e-10);
    const auto sq = commutator_report(DeformationSpec::sqrt_n(), g, StarOrder::first);
    CHECK(sq.report.extra("oracle_max_abs").value() <= 1e-8);
    CHECK(sq.report.max_abs > 0.1);  // reported, not asserted small
    // Deviation from the target matches the oracle's deviation.
    const auto oracle_gap = sq.oracle - sq.target;
    CHECK(fstar::testing::max_abs_diff(oracle_gap.values(), sq.deviation.values()) <= 1e-8);
  }

  TEST_CASE("commutator deviation shrinks linearly with a small deformation") {
    const PhaseGrid g = square_grid(4.0, 65);
    const std::vector<double> eps = {1e-2, 1e-3, 1e-4, 1e-5};
    std::vector<double> dev;
    for (double e : eps) {
      const auto spec = parse_deformation("expr:1+" + format_double(e) + "*n");
      dev.push_back(commutator_report(spec, g, StarOrder::first).report.max_abs);
    }
    CHECK(dev[0] > 1e-3);
    CHECK(dev[0] < 1.0);
    std::vector<double> slopes;
    for (std::size_t k = 1; k < dev.size(); ++k) {
      slopes.push_back(std::log(dev[k - 1] / dev[k]) / std::log(eps[k - 1] / eps[k]));
      CHECK(slopes.back() > 0.95);
      CHECK(slopes.back() < 1.25);
    }
    // Higher-order terms in the deformation parameter fade out.
    CHECK(slopes.back() == doctest::Approx(1.0).epsilon(0.02));
  }

  TEST_CASE("associativity defect scaling") {
    const PhaseGrid g = square_grid(4.0, 65);
    const auto res = associativity_defect(PolySymbol::q(), PolySymbol::p(), PolySymbol::q() + PolySymbol::p(), g,
                                          DeformationSpec::sqrt_n(), {1e-1, 1e-2, 1e-3}, StarOrder::first);
    REQUIRE(res.slope.has_value());
    CHECK(*res.slope >= 1.9);
    CHECK_FALSE(res.exact_zero);

    const auto moyal = associativity_defect(parse_symbol("q^2+p"), parse_symbol("q*p"), parse_symbol("p^3"), g,
                                            DeformationSpec::identity(), {1e-1, 1e-2, 1e-3}, StarOrder::first);
    CHECK(moyal.exact_zero);
    CHECK_FALSE(moyal.slope.has_value());
    for (const auto& row : moyal.rows) CHECK(row.defect <= 1e-12);

    const auto w = fock_wigner(1, g);
    const auto radial = associativity_defect(w, w, w, DeformationSpec::qdef(1.2), {1.0, 0.1, 0.01}, StarOrder::first);
    for (const auto& row : radial.rows) CHECK(row.defect <= 1e-12);
  }

  TEST_CASE("associativity argument checks") {
    const PhaseGrid g = square_grid(2.0, 9);
    const auto q = PolySymbol::q();
    CHECK_THROWS_AS(associativity_defect(q, q, q, g, DeformationSpec::sqrt_n(), {0.1, 0.01}, StarOrder::first), OutOfRange);
    CHECK_THROWS_AS(associativity_defect(q, q, q, g, DeformationSpec::sqrt_n(), {0.1, 0.05, 0.02}, StarOrder::first),
                    OutOfRange);
    CHECK_THROWS_AS(fit_loglog_slope({{1.0, 1e-15}, {0.1, 1e-16}, {0.01, 0.0}}), DegenerateFit);
    CHECK(fit_loglog_slope({{1.0, 1.0}, {0.1, 1e-2}, {0.01, 1e-4}}) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

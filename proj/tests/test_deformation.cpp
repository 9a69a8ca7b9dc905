#include <doctest.h>

#include <cmath>

#include "fstar/deformation.hpp"
#include "fstar/errors.hpp"

using namespace fstar;

TEST_SUITE("deformation") {
  TEST_CASE("eval_f examples") {
    CHECK(eval_f(DeformationSpec::identity(), 7.3) == 1.0);
    CHECK(eval_f(DeformationSpec::sqrt_n(), 4.0) == 2.0);
    // q-bracket oracle at 40 digits: 1.0221618339650599646697...
    CHECK(eval_f(DeformationSpec::qdef(1.2), 3.0) == doctest::Approx(1.0221618339650600).epsilon(1e-15));
    CHECK(eval_f(DeformationSpec::qdef(1.2), 0.5) == doctest::Approx(0.99792745000021840).epsilon(1e-15));
    CHECK(eval_f(parse_deformation("expr:sqrt(1+0.1*n)"), 0.0) == 1.0);
  }

  TEST_CASE("qdef matches the q-bracket definition") {
    const double q = 1.2;
    for (int n = 1; n <= 30; ++n) {
      const double bracket = (std::pow(q, n) - std::pow(q, -n)) / (q - 1 / q);
      CHECK(eval_f(DeformationSpec::qdef(q), n) == doctest::Approx(std::sqrt(bracket / n)).epsilon(1e-13));
    }
    CHECK(eval_f(DeformationSpec::qdef(1.0), 5.0) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("eval_f rejects non-positive values") {
    CHECK_THROWS_AS(eval_f(parse_deformation("expr:1-n"), 2.0), NonPositiveValue);
    CHECK_THROWS_AS(eval_f(parse_deformation("expr:1-n"), 1.0), NonPositiveValue);
    CHECK_THROWS_AS(parse_deformation("expr:1-n").validate(3), NonPositiveValue);
    CHECK_NOTHROW(DeformationSpec::sqrt_n().validate(50));
  }

  TEST_CASE("f_factorial") {
    const FFactorialTable id(DeformationSpec::identity(), 10);
    CHECK(f_factorial(id, 5) == doctest::Approx(1.0).epsilon(1e-15));
    const FFactorialTable sq(DeformationSpec::sqrt_n(), 10);
    CHECK(f_factorial(sq, 0) == 1.0);
    CHECK(f_factorial(sq, 4) == doctest::Approx(std::sqrt(24.0)).epsilon(1e-14));
    CHECK_THROWS_AS(f_factorial(sq, 11), OutOfRange);
    CHECK_THROWS_AS(f_factorial(sq, -1), OutOfRange);
  }

  TEST_CASE("amplitude_F") {
    CHECK(amplitude_F(DeformationSpec::identity(), 3.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(amplitude_F(DeformationSpec::sqrt_n(), 1.0) == doctest::Approx(2.1213203435596426).epsilon(1e-15));
    CHECK(amplitude_F(DeformationSpec::qdef(1.2), 2.0) == doctest::Approx(1.0683712478962799).epsilon(1e-14));
    CHECK_THROWS_AS(amplitude_F(DeformationSpec::sqrt_n(), 0.0), SingularAmplitude);
  }

  TEST_CASE("commutator_target") {
    CHECK(commutator_target(DeformationSpec::identity(), 9.0) == 1.0);
    CHECK(commutator_target(DeformationSpec::sqrt_n(), 3.0) == 7.0);
    CHECK(commutator_target(DeformationSpec::sqrt_n(), 0.0) == 1.0);
    CHECK(commutator_target(DeformationSpec::qdef(1.2), 2.0) == doctest::Approx(1.1011111111111111).epsilon(1e-14));
  }

  TEST_CASE("spectrum examples") {
    const auto id = spectrum(DeformationSpec::identity(), 3, 1.0, 1.0);
    REQUIRE(id.size() == 4);
    CHECK(id[0].energy == 0.5);
    CHECK(id[3].energy == 3.5);
    CHECK(spectrum(DeformationSpec::sqrt_n(), 1, 1.0, 1.0)[1].energy == 2.5);
    CHECK(spectrum(DeformationSpec::identity(), 2, 0.5, 3.0)[2].energy == doctest::Approx(0.5 * 0.5 * 3.0 * 5.0));
  }

  TEST_CASE("spectrum is positive and increasing for registry specs") {
    for (const auto& spec : registry_specs()) {
      const auto rows = spectrum(spec, 40, 1.0, 1.0);
      for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].energy > rows[k - 1].energy);
      CHECK(rows[0].energy > 0.0);
    }
  }

  TEST_CASE("normalization examples") {
    for (const auto& spec : registry_specs()) CHECK(normalization_Nf(spec, 0.0) == 1.0);
    CHECK(normalization_Nf(DeformationSpec::identity(), 1.0) == doctest::Approx(0.60653065971263342).epsilon(1e-14));
    // I_0(2)^{-1/2}; the commonly quoted 0.66237 is a rounding slip.
    CHECK(normalization_Nf(DeformationSpec::sqrt_n(), 1.0) == doctest::Approx(0.66232641487188833).epsilon(1e-14));
    CHECK(normalization_Nf(DeformationSpec::qdef(1.2), 1.0) == doctest::Approx(0.60946185950052609).epsilon(1e-14));
  }

  TEST_CASE("normalization errors") {
    CHECK_THROWS_AS(normalization_Nf(DeformationSpec::identity(), -1.0), OutOfRange);
    CHECK_THROWS_AS(normalization_Nf(DeformationSpec::identity(), 500.0, 1e-14, 50), SeriesDivergence);
    // f shrinking like 1/n makes the terms grow without bound.
    CHECK_THROWS_AS(normalization_Nf(parse_deformation("expr:1/(1+n)"), 4.0), SeriesDivergence);
  }

  TEST_CASE("parse_deformation") {
    CHECK(parse_deformation("identity").kind() == DeformationKind::identity);
    CHECK(parse_deformation("sqrt_n").kind() == DeformationKind::sqrt_n);
    const auto q = parse_deformation("qdef:q=1.2");
    CHECK(q.kind() == DeformationKind::qdef);
    CHECK(q.params().at("q") == 1.2);
    CHECK(q.to_string() == "qdef:q=1.2");
    const auto e = parse_deformation("expr:sqrt(1+0.1*n)");
    CHECK(e.kind() == DeformationKind::expr);
    CHECK(e.to_string() == "expr:sqrt(1+0.1*n)");
    for (const auto& spec : registry_specs()) CHECK(parse_deformation(spec.to_string()).to_string() == spec.to_string());
  }

  TEST_CASE("parse_deformation errors") {
    CHECK_THROWS_AS(parse_deformation("bogus"), ParseError);
    CHECK_THROWS_AS(parse_deformation("qdef:q=-1"), ParseError);
    CHECK_THROWS_AS(parse_deformation("qdef:p=1.2"), ParseError);
    CHECK_THROWS_AS(parse_deformation("qdef:q="), ParseError);
    try {
      (void)parse_deformation("expr:1+*n");
      FAIL("expected ParseError");
    } catch (const ParseError& err) {
      CHECK(err.position() == 7);  // relative to the whole string
    }
  }
}

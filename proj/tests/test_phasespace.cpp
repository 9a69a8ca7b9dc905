#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fstar/errors.hpp"
#include "fstar/kernels.hpp"
#include "fstar/phasespace.hpp"
#include "testing.hpp"

using namespace fstar;
using fstar::testing::square_grid;

namespace {

// Sample nearest to (q, p) on a grid that contains it exactly (offset 0).
PhaseGrid aligned_grid(double half, int n) {
  PhaseGrid g = square_grid(half, n);
  g.offset = 0.0;
  return g;
}

}  // namespace

TEST_SUITE("phasespace") {
  TEST_CASE("laguerre examples") {
    CHECK(laguerre(0, 3.7) == 1.0);
    CHECK(laguerre(5, 0.0) == 1.0);
    CHECK(laguerre(2, 1.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(laguerre(3, 2.0) == doctest::Approx(1 - 6 + 6 - 8.0 / 6).epsilon(1e-14));
    CHECK(assoc_laguerre(2, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));  // (x^2 - 6x + 6)/2
    CHECK(assoc_laguerre(-1, 2.0, 1.0) == 0.0);
  }

  TEST_CASE("fock_wigner values at the origin") {
    const PhaseGrid g = aligned_grid(2.0, 5);  // samples at -2,-1,0,1,2
    CHECK(fock_wigner(0, g).at(2, 2).real() == doctest::Approx(2.0));
    CHECK(fock_wigner(1, g).at(2, 2).real() == doctest::Approx(-2.0));
    CHECK(fock_wigner(0, g).at(3, 3).real() == doctest::Approx(2 * std::exp(-2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(fock_wigner(-1, g), OutOfRange);
  }

  TEST_CASE("fock_wigner is radial and scales with hbar") {
    const PhaseGrid g = square_grid(4.0, 33, 0.5);
    const auto w = fock_wigner(3, g);
    for (int i = 0; i < g.n_q - 1; ++i) {
      CHECK(w.at(i, 5).real() == doctest::Approx(w.at(g.n_q - 2 - i, 5).real()).epsilon(1e-12));
      CHECK(w.at(i, 7).real() == doctest::Approx(w.at(7, i).real()).epsilon(1e-12));
    }
    const double q = g.q(20), p = g.p(11);
    const double u = (q * q + p * p) / 0.5;
    CHECK(w.at(20, 11).real() == doctest::Approx(-2 * std::exp(-u) * laguerre(3, 2 * u)).epsilon(1e-13));
  }

  TEST_CASE("integrate examples") {
    const PhaseGrid unit = square_grid(1.0, 21);
    const Field one(unit, std::vector<Complex>(unit.size(), 1.0));
    // Trapezoid over the sample cell span (half-cell offset moves it by dq/2).
    CHECK(integrate(one).real() == doctest::Approx(4.0 / (2 * std::numbers::pi)).epsilon(1e-14));
    const PhaseGrid g = default_grid();
    CHECK(integrate(fock_wigner(0, g)).real() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(integrate(fock_wigner(3, g)).real() - 1.0) <= 1e-6);
    CHECK(std::abs(integrate(fock_wigner(5, g)).real() - 1.0) <= 1e-6);
  }

  TEST_CASE("Fock functions are orthogonal") {
    const PhaseGrid g = default_grid();
    const auto w2 = fock_wigner(2, g);
    const auto w3 = fock_wigner(3, g);
    CHECK(std::abs(integrate(w2 * w3)) < 1e-12);
    CHECK(integrate(w3 * w3).real() == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("wigner weights sum to one") {
    for (const auto& spec : registry_specs()) {
      for (double z2 : {0.5, 1.0, 2.0}) {
        const auto w = wigner_weights(spec, z2);
        double total = 0.0;
        for (double x : w.weights) total += x;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(w.truncation_n + 1 == static_cast<int>(w.weights.size()));
      }
    }
  }

  TEST_CASE("fcs_wigner examples") {
    const PhaseGrid g = aligned_grid(2.0, 5);
    const auto vac = fcs_wigner(DeformationSpec::sqrt_n(), 0.0, g);
    const auto w0 = fock_wigner(0, g);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(vac.values()[k].real() == doctest::Approx(w0.values()[k].real()));
    const auto coh = fcs_wigner(DeformationSpec::identity(), 1.0, g);
    CHECK(coh.at(2, 2).real() == doctest::Approx(0.27067056647322538).epsilon(1e-13));
    CHECK(std::abs(integrate(fcs_wigner(DeformationSpec::sqrt_n(), 1.0, default_grid())).real() - 1.0) <= 1e-6);
  }

  TEST_CASE("gradient examples") {
    const PhaseGrid g = square_grid(2.0, 41);
    const Field lin(g, kernels::sample(g, [](double q, double) { return Complex(q); }));
    const auto [dq, dp] = gradient(lin, DerivativeMethod::fd4);
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(dq.values()[k].real() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(dp.values()[k]) < 1e-12);
    }
    CHECK_THROWS_AS(gradient(lin, DerivativeMethod::analytic_radial), ProfileUnavailable);

    const PhaseGrid a = aligned_grid(2.0, 5);
    const auto [wq, wp] = gradient(fock_wigner(0, a), DerivativeMethod::analytic_radial);
    CHECK(wq.at(3, 2).real() == doctest::Approx(-1.4715177646857693).epsilon(1e-14));
    CHECK(std::abs(wp.at(3, 2)) < 1e-15);
  }

  TEST_CASE("fd4 and analytic gradients converge together") {
    // The 257^2 comparison on [-6,6]^2 sits near 8e-4; the gap shrinks at fourth order.
    auto gap = [](int n) {
      const PhaseGrid g = square_grid(6.0, n);
      const auto w = fock_wigner(4, g);
      const auto [fq, fp] = gradient(w, DerivativeMethod::fd4);
      const auto [aq, ap] = gradient(w, DerivativeMethod::analytic_radial);
      return std::max(fstar::testing::max_abs_diff(fq.values(), aq.values()),
                      fstar::testing::max_abs_diff(fp.values(), ap.values()));
    };
    const double coarse = gap(257);
    const double fine = gap(513);
    CHECK(coarse / fine > 12.0);
    CHECK(fine < 1e-4);
  }

  TEST_CASE("partial_samples falls back to finite differences") {
    const PhaseGrid g = square_grid(3.0, 257);
    const auto w = fock_wigner(1, g);
    const Field bare(g, std::vector<Complex>(w.values().begin(), w.values().end()));
    const auto exact = partial_samples(w, 2);
    const auto approx = partial_samples(bare, 2);
    CHECK(fstar::testing::max_abs_diff(exact[1][1], approx[1][1]) < 1e-4);
    CHECK(fstar::testing::max_abs_diff(exact[0][2], approx[0][2]) < 1e-4);
  }
}

#pragma once

// Laguerre polynomials, Fock-state and f-deformed coherent-state Wigner
// functions, phase-space quadrature and gradients.

#include <utility>
#include <vector>

#include "fstar/deformation.hpp"
#include "fstar/field.hpp"
#include "fstar/grid.hpp"

namespace fstar {

/// L_n(x) by the three-term recurrence.
double laguerre(int n, double x);

/// Generalized L_n^(alpha)(x) by recurrence; zero for n < 0.
double assoc_laguerre(int n, double alpha, double x);

/// Radial profile of the Fock-state Wigner function, w(u) = 2 (-1)^n e^{-u} L_n(2u),
/// with derivatives from d^k/dx^k L_n(x) = (-1)^k L_{n-k}^(k)(x).
RadialProfile fock_profile(int n);

/// W_n(q, p) = 2 (-1)^n e^{-(q^2+p^2)/hbar} L_n(2 (q^2+p^2)/hbar), hbar from the grid.
/// The field carries its radial symbol.
Field fock_wigner(int n, const PhaseGrid& grid, Exec exec = Exec::parallel);

/// Diagonal mixture weights N_f^2 |zeta|^{2n} / (n! (f(n)!)^2).
struct WignerWeights {
  DeformationSpec spec;
  double zeta_abs2 = 0.0;
  std::vector<double> weights;
  int truncation_n = 0;
};

WignerWeights wigner_weights(const DeformationSpec& spec, double zeta_abs2, double tol = kDefaultSeriesTol,
                             int n_max = kDefaultSeriesMax);

/// Sum_n weights[n] W_n; radial symbol attached.
Field fcs_wigner(const DeformationSpec& spec, double zeta_abs2, const PhaseGrid& grid,
                 double tol = kDefaultSeriesTol, Exec exec = Exec::parallel);
Field fcs_wigner(const WignerWeights& weights, const PhaseGrid& grid, Exec exec = Exec::parallel);

/// sum values dq dp / (2 pi hbar) with trapezoid weights.
Complex integrate(const Field& field, Exec exec = Exec::parallel);

enum class DerivativeMethod { fd4, analytic_radial };

/// (d/dq, d/dp). analytic_radial uses the field's symbol and throws
/// ProfileUnavailable when none is attached.
std::pair<Field, Field> gradient(const Field& field, DerivativeMethod method, Exec exec = Exec::parallel);

/// Mixed partials of a field up to `order`, indexed [a][b] for d^a_q d^b_p.
/// Uses the attached symbol when present, otherwise repeated fd4 (each
/// repetition loses one order of accuracy).
std::vector<std::vector<std::vector<Complex>>> partial_samples(const Field& field, int order,
                                                               Exec exec = Exec::parallel);

}  // namespace fstar

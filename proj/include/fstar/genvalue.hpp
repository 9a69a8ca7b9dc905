#pragma once

// Star-genvalue residuals, bracket terms, the deformed commutator report and
// associativity-defect scaling.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fstar/deformation.hpp"
#include "fstar/field.hpp"
#include "fstar/starproduct.hpp"

namespace fstar {

struct HamiltonianField {
  Field field;
  DeformationSpec spec;
  double hbar = 1.0;
  double omega = 1.0;
};

/// H(q, p) = (hbar omega / 2) [(n+1) f^2(n+1) + n f^2(n)], n = (q^2 + p^2)/(2 hbar),
/// hbar from the grid. The field carries its analytic radial profile.
HamiltonianField build_hamiltonian(const DeformationSpec& spec, const PhaseGrid& grid, double omega,
                                   Exec exec = Exec::parallel);

struct Witness {
  double q = 0.0;
  double p = 0.0;
  Complex value;
};

struct ResidualReport {
  std::string identity_name;
  std::string spec;
  int n = -1;  // -1 when not applicable
  double hbar = 1.0;
  double omega = 1.0;
  StarOrder order = StarOrder::first;
  double max_abs = 0.0;
  double l2 = 0.0;
  double imag_max = 0.0;
  Witness witness;
  PhaseGrid grid;
  /// Additional named diagnostics, serialized in insertion order.
  std::vector<std::pair<std::string, double>> extras;

  std::optional<double> extra(const std::string& key) const;
};

/// Fills max_abs / l2 / witness over q^2 + p^2 <= radius2 and imag_max over the grid.
void fill_stats(ResidualReport& report, const Field& residual, double radius2, Exec exec = Exec::parallel);

inline constexpr double kDefaultRadiusCut = 4.0;

/// R = H *_f W_n - E_n W_n.
///
/// For the identity deformation the product is the exact Moyal product with the
/// polynomial oscillator symbol omega (q^2 + p^2)/2; otherwise the ansatz
/// Hamiltonian field is combined with W_n through fstar_apply at `order`.
/// max_abs and l2 cover q^2 + p^2 <= r_cut^2 hbar; imag_max covers the grid.
/// Extras: energy (E_n), phase_average (integral of H *_f W_n), hamiltonian_offset.
ResidualReport genvalue_residual(const DeformationSpec& spec, int n, const PhaseGrid& grid, double omega,
                                 StarOrder order, double r_cut = kDefaultRadiusCut, Exec exec = Exec::parallel);

/// Residual field behind genvalue_residual (same conventions).
Field genvalue_residual_field(const DeformationSpec& spec, int n, const PhaseGrid& grid, double omega,
                              StarOrder order, Exec exec = Exec::parallel);

/// (i hbar / 2) F(n) (h_q w_p - h_p w_q), analytic derivatives where attached.
Field bracket_term(const Field& h, const Field& w, const DeformationSpec& spec, double hbar,
                   Exec exec = Exec::parallel);

struct CommutatorResult {
  ResidualReport report;
  Field commutator;  // (1/hbar)[A, conj A]_f
  Field target;      // (n+1) f^2(n+1) - n f^2(n)
  Field oracle;      // F(n) (f^2 + 2 n f f')
  Field deviation;   // commutator - target
};

/// Builds A = a f(n), conj(A) = conj(a) f(n) with a = (q + i p)/sqrt(2), takes
/// their f-star commutator and compares with the target and the closed-form
/// first-order prediction. Norms cover the whole grid (hbar from the grid).
/// Extras: oracle_max_abs, target_max_abs_dev.
CommutatorResult commutator_report(const DeformationSpec& spec, const PhaseGrid& grid, StarOrder order,
                                   Exec exec = Exec::parallel);

struct DefectRow {
  double hbar = 0.0;
  double defect = 0.0;
};

struct AssociativityResult {
  std::vector<DefectRow> rows;
  std::optional<double> slope;  // absent in the exact-zero case
  bool exact_zero = false;
};

inline constexpr double kDegenerateDefect = 1e-14;

/// Least-squares slope of log(defect) against log(hbar). Throws DegenerateFit if
/// every defect is below kDegenerateDefect, OutOfRange if fewer than 3 distinct
/// hbar values are given.
double fit_loglog_slope(const std::vector<DefectRow>& rows);

/// L2 norm over the grid of (k *_f g) *_f h - k *_f (g *_f h) for each hbar.
/// With the identity deformation and polynomial operands the exact Moyal product is
/// used instead (order ignored).
AssociativityResult associativity_defect(const Field& k, const Field& g, const Field& h,
                                         const DeformationSpec& spec, const std::vector<double>& hbar_list,
                                         StarOrder order, Exec exec = Exec::parallel);

/// Polynomial variant: operands given as symbols, sampled on `grid`.
AssociativityResult associativity_defect(const PolySymbol& k, const PolySymbol& g, const PolySymbol& h,
                                         const PhaseGrid& grid, const DeformationSpec& spec,
                                         const std::vector<double>& hbar_list, StarOrder order,
                                         Exec exec = Exec::parallel);

}  // namespace fstar

#pragma once

// Deformation functions f(n) of the generalized annihilation operator
// A = a f(n), and the scalar quantities derived from them.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fstar/expr.hpp"
#include "fstar/series.hpp"

namespace fstar {

enum class DeformationKind { identity, sqrt_n, qdef, expr };

class DeformationSpec {
 public:
  DeformationSpec() = default;

  static DeformationSpec identity();
  static DeformationSpec sqrt_n();
  /// q-deformed oscillator, f(n) = sqrt([n]_q / n) with [n]_q = (q^n - q^-n)/(q - 1/q).
  static DeformationSpec qdef(double q);
  static DeformationSpec from_expr(std::string_view source);

  DeformationKind kind() const { return kind_; }
  const std::map<std::string, double>& params() const { return params_; }
  const std::optional<std::string>& expr_source() const { return expr_source_; }

  /// Canonical mini-language text, e.g. "qdef:q=1.2".
  std::string to_string() const;

  /// f(n) at real n, without positivity checks. Works for double and Series<double>.
  template <class T>
  T f(const T& n) const {
    using std::sqrt;
    switch (kind_) {
      case DeformationKind::identity:
        return n * 0.0 + 1.0;
      case DeformationKind::sqrt_n:
        return sqrt(n);
      case DeformationKind::qdef:
        return sqrt(f_squared(n));
      case DeformationKind::expr:
        return expr_->evaluate(n);
    }
    return n;
  }

  /// f(n)^2, exact for the closed-form kinds (sqrt_n gives n, not sqrt(n)^2).
  template <class T>
  T f_squared(const T& n) const {
    switch (kind_) {
      case DeformationKind::identity:
        return n * 0.0 + 1.0;
      case DeformationKind::sqrt_n:
        return n;
      case DeformationKind::qdef: {
        const double lambda = std::log(params_.at("q"));
        const double scale = lambda == 0.0 ? 1.0 : lambda / std::sinh(lambda);
        return sinhc(n * lambda) * scale;
      }
      case DeformationKind::expr: {
        T v = expr_->evaluate(n);
        return v * v;
      }
    }
    return n;
  }

  /// ((n+1) f^2(n+1) - n f^2(n)) / (f(n) f(n+1)) with no singularity checks.
  template <class T>
  T amplitude(const T& n) const {
    T n1 = n + 1.0;
    return ((n1 * f_squared(n1)) - (n * f_squared(n))) / (f(n) * f(n1));
  }

  /// (n+1) f^2(n+1) - n f^2(n).
  template <class T>
  T commutator(const T& n) const {
    T n1 = n + 1.0;
    return n1 * f_squared(n1) - n * f_squared(n);
  }

  /// (n+1) f^2(n+1) + n f^2(n); the energy in units of hbar*omega/2.
  template <class T>
  T energy_sum(const T& n) const {
    T n1 = n + 1.0;
    return n1 * f_squared(n1) + n * f_squared(n);
  }

  /// Throws NonPositiveValue unless f(j) is finite and positive for j = 1..n_max.
  void validate(int n_max) const;

 private:
  DeformationKind kind_ = DeformationKind::identity;
  std::map<std::string, double> params_;
  std::optional<std::string> expr_source_;
  std::optional<Expr> expr_;
};

/// Parses the mini-language: `identity`, `sqrt_n`, `qdef:q=<real>`, `expr:<expression in n>`.
DeformationSpec parse_deformation(std::string_view text);

/// The built-in deformations with representative parameters.
std::vector<DeformationSpec> registry_specs();

/// f(n); throws NonPositiveValue when f(n) <= 0 for n > 0 (or f(0) < 0).
double eval_f(const DeformationSpec& spec, double n);

/// ln f(j)! for j = 0..n_max, built once and read-only.
class FFactorialTable {
 public:
  FFactorialTable(DeformationSpec spec, int n_max);

  const DeformationSpec& spec() const { return spec_; }
  int n_max() const { return static_cast<int>(log_values_.size()) - 1; }
  double log_value(int n) const;
  const std::vector<double>& log_values() const { return log_values_; }

 private:
  DeformationSpec spec_;
  std::vector<double> log_values_;
};

/// f(n)! = f(1) f(2) ... f(n); f(0)! = 1. Throws OutOfRange past the table.
double f_factorial(const FFactorialTable& table, int n);

/// Throws SingularAmplitude when f(n) f(n+1) vanishes or the result is not finite.
double amplitude_F(const DeformationSpec& spec, double n);

double commutator_target(const DeformationSpec& spec, double n);

struct SpectrumRow {
  int n = 0;
  double energy = 0.0;
};

/// E_n = (hbar omega / 2) [(n+1) f^2(n+1) + n f^2(n)] for n = 0..n_max.
std::vector<SpectrumRow> spectrum(const DeformationSpec& spec, int n_max, double hbar,
                                  double omega);

inline constexpr int kDefaultSeriesMax = 1000;
inline constexpr double kDefaultSeriesTol = 1e-14;

/// ln(|zeta|^{2n} / (n! (f(n)!)^2)) for n = 0..N, where N is the first index whose
/// term falls below tol times the running sum. Throws SeriesDivergence if that
/// never happens by n_max.
std::vector<double> coherent_log_terms(const DeformationSpec& spec, double zeta_abs2, double tol,
                                       int n_max);

/// N_f = [sum_n |zeta|^{2n} / (n! (f(n)!)^2)]^{-1/2}.
double normalization_Nf(const DeformationSpec& spec, double zeta_abs2,
                        double tol = kDefaultSeriesTol, int n_max = kDefaultSeriesMax);

}  // namespace fstar

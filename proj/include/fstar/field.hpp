#pragma once

#include <span>
#include <string>
#include <vector>

#include "fstar/grid.hpp"
#include "fstar/kernels.hpp"
#include "fstar/symbol.hpp"

namespace fstar {

/// Complex samples of a phase-space function on a PhaseGrid, row-major over
/// (q index, p index). A field may carry the analytic symbol it was sampled
/// from; derivative consumers use it in place of finite differences.
class Field {
 public:
  /// Throws std::invalid_argument on a size mismatch or non-finite entries.
  Field(PhaseGrid grid, std::vector<Complex> values, std::string label = {}, SymbolPtr symbol = nullptr);

  static Field from_symbol(const PhaseGrid& grid, SymbolPtr symbol, std::string label,
                           Exec exec = Exec::parallel);

  const PhaseGrid& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  Complex at(int i, int j) const { return values_[grid_.index(i, j)]; }
  const std::string& label() const { return label_; }
  const SymbolPtr& symbol() const { return symbol_; }
  bool has_symbol() const { return symbol_ != nullptr; }

  Field relabeled(std::string label) const;

  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator*(Complex s, const Field& a);
  /// Pointwise product.
  friend Field operator*(const Field& a, const Field& b);

 private:
  PhaseGrid grid_;
  std::vector<Complex> values_;
  std::string label_;
  SymbolPtr symbol_;
};

Field conj(const Field& a);

/// Symbol of the polynomial c0 + cq q + cp p (exact, any order).
SymbolPtr affine_symbol(Complex c0, Complex cq, Complex cp);

}  // namespace fstar

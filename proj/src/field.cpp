#include "fstar/field.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace fstar {

namespace {

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
}

class ConstantSymbol final : public Symbol {
 public:
  explicit ConstantSymbol(Complex c) : c_(c) {}
  Partials partials(double, double, int order) const override {
    Partials r(order);
    r(0, 0) = c_;
    return r;
  }
  bool radial() const override { return true; }

 private:
  Complex c_;
};

}  // namespace

Field::Field(PhaseGrid grid, std::vector<Complex> values, std::string label, SymbolPtr symbol)
    : grid_(grid), values_(std::move(values)), label_(std::move(label)), symbol_(std::move(symbol)) {
  grid_.validate();
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("field '" + label_ + "' has " + std::to_string(values_.size()) +
                                " values for a grid of " + std::to_string(grid_.size()));
  }
  for (const Complex& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("field '" + label_ + "' contains a non-finite value");
    }
  }
}

Field Field::from_symbol(const PhaseGrid& grid, SymbolPtr symbol, std::string label, Exec exec) {
  const Symbol& s = *symbol;
  auto values = kernels::sample(grid, [&](double q, double p) { return s.value(q, p); }, exec);
  return Field(grid, std::move(values), std::move(label), std::move(symbol));
}

Field Field::relabeled(std::string label) const {
  Field copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<Complex> v(a.values_.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.values_[k] + b.values_[k];
  SymbolPtr s;
  if (a.symbol_ && b.symbol_) s = std::make_shared<SumSymbol>(1.0, a.symbol_, 1.0, b.symbol_);
  return Field(a.grid_, std::move(v), a.label_ + "+" + b.label_, std::move(s));
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<Complex> v(a.values_.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.values_[k] - b.values_[k];
  SymbolPtr s;
  if (a.symbol_ && b.symbol_) s = std::make_shared<SumSymbol>(1.0, a.symbol_, -1.0, b.symbol_);
  return Field(a.grid_, std::move(v), a.label_ + "-" + b.label_, std::move(s));
}

Field operator*(Complex c, const Field& a) {
  std::vector<Complex> v(a.values_.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = c * a.values_[k];
  SymbolPtr s;
  if (a.symbol_) s = std::make_shared<SumSymbol>(c, a.symbol_, 0.0, std::make_shared<ConstantSymbol>(0.0));
  return Field(a.grid_, std::move(v), a.label_, std::move(s));
}

Field operator*(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<Complex> v(a.values_.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.values_[k] * b.values_[k];
  SymbolPtr s;
  if (a.symbol_ && b.symbol_) s = std::make_shared<ProductSymbol>(a.symbol_, b.symbol_);
  return Field(a.grid_, std::move(v), a.label_ + "*" + b.label_, std::move(s));
}

Field conj(const Field& a) {
  std::vector<Complex> v(a.values().begin(), a.values().end());
  for (Complex& x : v) x = std::conj(x);
  SymbolPtr s;
  if (a.has_symbol()) s = std::make_shared<ConjugateSymbol>(a.symbol());
  return Field(a.grid(), std::move(v), "conj(" + a.label() + ")", std::move(s));
}

SymbolPtr affine_symbol(Complex c0, Complex cq, Complex cp) {
  return std::make_shared<AffineTimesSymbol>(c0, cq, cp, std::make_shared<ConstantSymbol>(1.0));
}

}  // namespace fstar

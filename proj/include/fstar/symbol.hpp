#pragma once

// Analytic phase-space functions that can report exact mixed partial
// derivatives at a point. Fields built from a symbol keep a reference to it so
// star products can differentiate them without finite differences.

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace fstar {

using Complex = std::complex<double>;

/// Mixed partials d^{a+b} f / dq^a dp^b for a + b <= order.
class Partials {
 public:
  static constexpr int kMaxOrder = 8;

  explicit Partials(int order = 0);

  int order() const { return order_; }
  Complex& operator()(int a, int b) { return d_[slot(a, b)]; }
  const Complex& operator()(int a, int b) const { return d_[slot(a, b)]; }
  Complex value() const { return d_[0]; }

  Partials derivative_q() const;
  Partials derivative_p() const;
  /// Same derivatives truncated to a lower order.
  Partials truncated(int order) const;

  friend Partials operator+(const Partials& a, const Partials& b);
  friend Partials operator-(const Partials& a, const Partials& b);
  /// Leibniz rule.
  friend Partials operator*(const Partials& a, const Partials& b);
  friend Partials operator*(Complex s, Partials a);

 private:
  static std::size_t slot(int a, int b) {
    const int k = a + b;
    return static_cast<std::size_t>(k * (k + 1) / 2 + b);
  }

  int order_;
  std::array<Complex, (kMaxOrder + 1) * (kMaxOrder + 2) / 2> d_{};
};

Partials conj(const Partials& a);

class Symbol {
 public:
  virtual ~Symbol() = default;
  virtual Partials partials(double q, double p, int order) const = 0;
  /// True when the function depends on q^2 + p^2 only.
  virtual bool radial() const { return false; }

  Complex value(double q, double p) const { return partials(q, p, 0).value(); }
};

using SymbolPtr = std::shared_ptr<const Symbol>;

/// Fills out[k] = w^(k)(u) for k = 0..out.size()-1.
using RadialProfile = std::function<void(double u, std::span<double> out)>;

/// w(u) with u = (q^2 + p^2) / hbar.
///
/// Partials follow from d^a/dq^a w(s q^2 + c) =
///   sum_j a!/(j!(a-2j)!) (2 s q)^(a-2j) s^j w^(a-j),  s = 1/hbar,
/// applied once in q and once in p.
class RadialSymbol final : public Symbol {
 public:
  RadialSymbol(RadialProfile profile, double hbar);

  Partials partials(double q, double p, int order) const override;
  bool radial() const override { return true; }
  double hbar() const { return hbar_; }
  const RadialProfile& profile() const { return profile_; }

 private:
  RadialProfile profile_;
  double hbar_;
};

/// (c0 + cq q + cp p) * inner.
class AffineTimesSymbol final : public Symbol {
 public:
  AffineTimesSymbol(Complex c0, Complex cq, Complex cp, SymbolPtr inner);
  Partials partials(double q, double p, int order) const override;

 private:
  Complex c0_, cq_, cp_;
  SymbolPtr inner_;
};

class SumSymbol final : public Symbol {
 public:
  SumSymbol(Complex a_scale, SymbolPtr a, Complex b_scale, SymbolPtr b);
  Partials partials(double q, double p, int order) const override;
  bool radial() const override { return a_->radial() && b_->radial(); }

 private:
  Complex a_scale_, b_scale_;
  SymbolPtr a_, b_;
};

class ProductSymbol final : public Symbol {
 public:
  ProductSymbol(SymbolPtr a, SymbolPtr b);
  Partials partials(double q, double p, int order) const override;
  bool radial() const override { return a_->radial() && b_->radial(); }

 private:
  SymbolPtr a_, b_;
};

class ConjugateSymbol final : public Symbol {
 public:
  explicit ConjugateSymbol(SymbolPtr inner) : inner_(std::move(inner)) {}
  Partials partials(double q, double p, int order) const override;
  bool radial() const override { return inner_->radial(); }

 private:
  SymbolPtr inner_;
};

/// Truncated f-star product k *_f g with amplitude F(n(q, p)) as an analytic
/// symbol; derivatives act on k, g and F alike (Leibniz).
class StarProductSymbol final : public Symbol {
 public:
  /// truncation_order is 1 or 2.
  StarProductSymbol(SymbolPtr k, SymbolPtr g, SymbolPtr amplitude, double hbar, int truncation_order);
  Partials partials(double q, double p, int order) const override;

 private:
  SymbolPtr k_, g_, amplitude_;
  double hbar_;
  int truncation_order_;
};

/// Poisson bracket {k, g} = k_q g_p - k_p g_q, as a partials table.
Partials poisson(const Partials& k, const Partials& g);

/// Second bidifferential power k_qq g_pp - 2 k_qp g_qp + k_pp g_qq.
Partials poisson_squared(const Partials& k, const Partials& g);

}  // namespace fstar

#include "fstar/symbol.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fstar {

namespace {

constexpr double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

void check_order(int order) {
  if (order < 0 || order > Partials::kMaxOrder) {
    throw std::invalid_argument("derivative order " + std::to_string(order) + " outside [0, " +
                                std::to_string(Partials::kMaxOrder) + "]");
  }
}

}  // namespace

Partials::Partials(int order) : order_(order) { check_order(order); }

Partials Partials::derivative_q() const {
  if (order_ == 0) throw std::invalid_argument("cannot differentiate an order-0 partials table");
  Partials r(order_ - 1);
  for (int k = 0; k <= r.order_; ++k) {
    for (int b = 0; b <= k; ++b) r(k - b, b) = (*this)(k - b + 1, b);
  }
  return r;
}

Partials Partials::derivative_p() const {
  if (order_ == 0) throw std::invalid_argument("cannot differentiate an order-0 partials table");
  Partials r(order_ - 1);
  for (int k = 0; k <= r.order_; ++k) {
    for (int b = 0; b <= k; ++b) r(k - b, b) = (*this)(k - b, b + 1);
  }
  return r;
}

Partials Partials::truncated(int order) const {
  Partials r(std::min(order, order_));
  const std::size_t count = slot(0, r.order_) + 1;
  std::copy_n(d_.begin(), count, r.d_.begin());
  return r;
}

Partials operator+(const Partials& a, const Partials& b) {
  Partials r(std::min(a.order_, b.order_));
  const std::size_t count = Partials::slot(0, r.order_) + 1;
  for (std::size_t s = 0; s < count; ++s) r.d_[s] = a.d_[s] + b.d_[s];
  return r;
}

Partials operator-(const Partials& a, const Partials& b) {
  Partials r(std::min(a.order_, b.order_));
  const std::size_t count = Partials::slot(0, r.order_) + 1;
  for (std::size_t s = 0; s < count; ++s) r.d_[s] = a.d_[s] - b.d_[s];
  return r;
}

Partials operator*(const Partials& a, const Partials& b) {
  Partials r(std::min(a.order_, b.order_));
  for (int k = 0; k <= r.order_; ++k) {
    for (int y = 0; y <= k; ++y) {
      const int x = k - y;
      Complex acc = 0.0;
      for (int i = 0; i <= x; ++i) {
        const double ci = binomial(x, i);
        for (int j = 0; j <= y; ++j) {
          acc += ci * binomial(y, j) * a(i, j) * b(x - i, y - j);
        }
      }
      r(x, y) = acc;
    }
  }
  return r;
}

Partials operator*(Complex s, Partials a) {
  const std::size_t count = Partials::slot(0, a.order_) + 1;
  for (std::size_t i = 0; i < count; ++i) a.d_[i] *= s;
  return a;
}

Partials conj(const Partials& a) {
  Partials r(a.order());
  for (int k = 0; k <= a.order(); ++k) {
    for (int b = 0; b <= k; ++b) r(k - b, b) = std::conj(a(k - b, b));
  }
  return r;
}

Partials poisson(const Partials& k, const Partials& g) {
  return k.derivative_q() * g.derivative_p() - k.derivative_p() * g.derivative_q();
}

Partials poisson_squared(const Partials& k, const Partials& g) {
  const Partials kq = k.derivative_q();
  const Partials kp = k.derivative_p();
  const Partials gq = g.derivative_q();
  const Partials gp = g.derivative_p();
  return kq.derivative_q() * gp.derivative_p() - Complex(2.0) * (kq.derivative_p() * gq.derivative_p()) +
         kp.derivative_p() * gq.derivative_q();
}

RadialSymbol::RadialSymbol(RadialProfile profile, double hbar) : profile_(std::move(profile)), hbar_(hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("radial symbol needs hbar > 0");
}

Partials RadialSymbol::partials(double q, double p, int order) const {
  check_order(order);
  const double s = 1.0 / hbar_;
  const double u = (q * q + p * p) * s;
  std::array<double, Partials::kMaxOrder + 1> w{};
  profile_(u, std::span<double>(w.data(), static_cast<std::size_t>(order) + 1));

  // Powers of (2 s q), (2 s p) and s.
  std::array<double, Partials::kMaxOrder + 1> xq{}, xp{}, sp{};
  xq[0] = xp[0] = sp[0] = 1.0;
  for (int k = 1; k <= order; ++k) {
    xq[k] = xq[k - 1] * 2.0 * s * q;
    xp[k] = xp[k - 1] * 2.0 * s * p;
    sp[k] = sp[k - 1] * s;
  }
  // Hermite-type coefficients a!/(j!(a-2j)!).
  auto coeff = [](int a, int j) {
    double c = 1.0;
    for (int t = a - 2 * j + 1; t <= a; ++t) c *= t;
    for (int t = 2; t <= j; ++t) c /= t;
    return c;
  };

  Partials r(order);
  for (int k = 0; k <= order; ++k) {
    for (int b = 0; b <= k; ++b) {
      const int a = k - b;
      double acc = 0.0;
      for (int j = 0; 2 * j <= a; ++j) {
        const double cq = coeff(a, j) * xq[a - 2 * j];
        for (int l = 0; 2 * l <= b; ++l) {
          acc += cq * coeff(b, l) * xp[b - 2 * l] * sp[j + l] * w[a + b - j - l];
        }
      }
      r(a, b) = acc;
    }
  }
  return r;
}

AffineTimesSymbol::AffineTimesSymbol(Complex c0, Complex cq, Complex cp, SymbolPtr inner)
    : c0_(c0), cq_(cq), cp_(cp), inner_(std::move(inner)) {}

Partials AffineTimesSymbol::partials(double q, double p, int order) const {
  const Partials g = inner_->partials(q, p, order);
  const Complex lin = c0_ + cq_ * q + cp_ * p;
  Partials r(order);
  for (int k = 0; k <= order; ++k) {
    for (int b = 0; b <= k; ++b) {
      const int a = k - b;
      Complex v = lin * g(a, b);
      if (a > 0) v += static_cast<double>(a) * cq_ * g(a - 1, b);
      if (b > 0) v += static_cast<double>(b) * cp_ * g(a, b - 1);
      r(a, b) = v;
    }
  }
  return r;
}

SumSymbol::SumSymbol(Complex a_scale, SymbolPtr a, Complex b_scale, SymbolPtr b)
    : a_scale_(a_scale), b_scale_(b_scale), a_(std::move(a)), b_(std::move(b)) {}

Partials SumSymbol::partials(double q, double p, int order) const {
  return a_scale_ * a_->partials(q, p, order) + b_scale_ * b_->partials(q, p, order);
}

ProductSymbol::ProductSymbol(SymbolPtr a, SymbolPtr b) : a_(std::move(a)), b_(std::move(b)) {}

Partials ProductSymbol::partials(double q, double p, int order) const {
  return a_->partials(q, p, order) * b_->partials(q, p, order);
}

Partials ConjugateSymbol::partials(double q, double p, int order) const {
  return conj(inner_->partials(q, p, order));
}

StarProductSymbol::StarProductSymbol(SymbolPtr k, SymbolPtr g, SymbolPtr amplitude, double hbar,
                                     int truncation_order)
    : k_(std::move(k)), g_(std::move(g)), amplitude_(std::move(amplitude)), hbar_(hbar),
      truncation_order_(truncation_order) {
  if (truncation_order != 1 && truncation_order != 2) {
    throw std::invalid_argument("star product symbol supports truncation order 1 or 2");
  }
}

Partials StarProductSymbol::partials(double q, double p, int order) const {
  const int need = order + truncation_order_;
  const Partials k = k_->partials(q, p, need);
  const Partials g = g_->partials(q, p, need);
  const Partials f = amplitude_->partials(q, p, order);
  Partials r = k * g + Complex(0.0, 0.5 * hbar_) * (f * poisson(k, g));
  if (truncation_order_ == 2) {
    r = r - Complex(hbar_ * hbar_ / 8.0) * (f * f * poisson_squared(k, g));
  }
  return r.truncated(order);
}

}  // namespace fstar

#pragma once

// Truncated univariate Taylor series arithmetic (forward-mode AD of any order).
//
// Coefficient k holds f^(k)(x0) / k!. All binary operations truncate to the
// smaller order of the two operands; scalars behave as constants.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fstar {

template <class T>
class Series {
 public:
  Series() : c_(1, T(0)) {}
  explicit Series(int order, T value = T(0)) : c_(static_cast<std::size_t>(order) + 1, T(0)) {
    c_[0] = value;
  }

  /// Independent variable expanded at x0: x0 + 1*dx.
  static Series variable(int order, T x0) {
    Series s(order, x0);
    if (order >= 1) s.c_[1] = T(1);
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  T value() const { return c_[0]; }
  T& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const T& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }

  /// k-th derivative at the expansion point.
  T derivative(int k) const {
    T fact = T(1);
    for (int j = 2; j <= k; ++j) fact *= T(j);
    return c_[static_cast<std::size_t>(k)] * fact;
  }

  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }
  Series& operator/=(const Series& o) { return *this = *this / o; }

  friend Series operator-(Series a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series r(std::min(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) r[k] = a[k] + b[k];
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series r(std::min(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) r[k] = a[k] - b[k];
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    Series r(std::min(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) {
      T acc = T(0);
      for (int j = 0; j <= k; ++j) acc += a[j] * b[k - j];
      r[k] = acc;
    }
    return r;
  }
  friend Series operator/(const Series& a, const Series& b) {
    Series r(std::min(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) {
      T acc = a[k];
      for (int j = 1; j <= k; ++j) acc -= b[j] * r[k - j];
      r[k] = acc / b[0];
    }
    return r;
  }

  friend Series operator+(Series a, T s) { a.c_[0] += s; return a; }
  friend Series operator+(T s, Series a) { a.c_[0] += s; return a; }
  friend Series operator-(Series a, T s) { a.c_[0] -= s; return a; }
  friend Series operator-(T s, const Series& a) { return (-a) + s; }
  friend Series operator*(Series a, T s) {
    for (auto& x : a.c_) x *= s;
    return a;
  }
  friend Series operator*(T s, Series a) { return a * s; }
  friend Series operator/(Series a, T s) {
    for (auto& x : a.c_) x /= s;
    return a;
  }
  friend Series operator/(T s, const Series& a) { return Series(a.order(), s) / a; }

  friend Series exp(const Series& a) {
    using std::exp;
    Series r(a.order());
    r[0] = exp(a[0]);
    for (int k = 1; k <= r.order(); ++k) {
      T acc = T(0);
      for (int j = 1; j <= k; ++j) acc += T(j) * a[j] * r[k - j];
      r[k] = acc / T(k);
    }
    return r;
  }

  friend Series log(const Series& a) {
    using std::log;
    Series r(a.order());
    r[0] = log(a[0]);
    for (int k = 1; k <= r.order(); ++k) {
      T acc = T(0);
      for (int j = 1; j < k; ++j) acc += T(j) * r[j] * a[k - j];
      r[k] = (a[k] - acc / T(k)) / a[0];
    }
    return r;
  }

  friend Series sqrt(const Series& a) {
    using std::sqrt;
    Series r(a.order());
    r[0] = sqrt(a[0]);
    for (int k = 1; k <= r.order(); ++k) {
      T acc = a[k];
      for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
      r[k] = acc / (T(2) * r[0]);
    }
    return r;
  }

  friend Series sinh(const Series& a) { return (exp(a) - exp(-a)) * T(0.5); }

  friend Series pow(const Series& a, T exponent) { return exp(log(a) * exponent); }
  friend Series pow(const Series& a, const Series& b) { return exp(log(a) * b); }

 private:
  std::vector<T> c_;
};

/// Integer power by repeated squaring; valid for negative bases.
template <class T>
T ipow(T base, long exponent) {
  if (exponent < 0) return T(1) / ipow(base, -exponent);
  T result = base * 0.0 + 1.0;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

/// sinh(x)/x, continuous through x = 0.
inline double sinhc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0 * (1.0 + x * x / 20.0);
  return std::sinh(x) / x;
}

template <class T>
Series<T> sinhc(const Series<T>& x) {
  if (std::abs(x.value()) > 0.1) return sinh(x) / x;
  // Even power series; |x0| <= 0.1 makes 12 terms exact to rounding.
  Series<T> x2 = x * x;
  Series<T> acc(x.order(), T(0));
  Series<T> term(x.order(), T(1));
  T fact = T(1);
  for (int k = 0; k < 12; ++k) {
    acc = acc + term / fact;
    term = term * x2;
    fact *= T((2 * k + 2) * (2 * k + 3));
  }
  return acc;
}

}  // namespace fstar

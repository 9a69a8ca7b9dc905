#include "fstar/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace fstar::reference {

std::vector<Complex> sample_symbol(const PhaseGrid& grid, const Symbol& symbol) {
  std::vector<Complex> out;
  out.reserve(grid.size());
  for (int i = 0; i < grid.n_q; ++i) {
    for (int j = 0; j < grid.n_p; ++j) out.push_back(symbol.value(grid.q(i), grid.p(j)));
  }
  return out;
}

namespace {

// coeffs[pos] = (first sample offset, 5 weights) for the derivative at line position pos.
struct Stencil {
  int start;
  double w[5];
};

Stencil stencil_for(int k, int n) {
  if (k == 0) return {0, {-25.0, 48.0, -36.0, 16.0, -3.0}};
  if (k == 1) return {0, {-3.0, -10.0, 18.0, -6.0, 1.0}};
  if (k == n - 2) return {n - 5, {-1.0, 6.0, -18.0, 10.0, 3.0}};
  if (k == n - 1) return {n - 5, {3.0, -16.0, 36.0, -48.0, 25.0}};
  return {k - 2, {1.0, -8.0, 0.0, 8.0, -1.0}};
}

}  // namespace

std::vector<Complex> fd4(const PhaseGrid& grid, std::span<const Complex> values, int axis) {
  if (grid.n_q < 5 || grid.n_p < 5) throw std::invalid_argument("fd4 needs at least 5 samples per axis");
  std::vector<Complex> out(grid.size());
  const int n = axis == 0 ? grid.n_q : grid.n_p;
  const double h = axis == 0 ? grid.dq() : grid.dp();
  for (int i = 0; i < grid.n_q; ++i) {
    for (int j = 0; j < grid.n_p; ++j) {
      const int k = axis == 0 ? i : j;
      const Stencil s = stencil_for(k, n);
      Complex acc = 0.0;
      for (int t = 0; t < 5; ++t) {
        const int m = s.start + t;
        acc += s.w[t] * (axis == 0 ? values[grid.index(m, j)] : values[grid.index(i, m)]);
      }
      out[grid.index(i, j)] = acc / (12.0 * h);
    }
  }
  return out;
}

Complex weighted_sum(const PhaseGrid& grid, std::span<const Complex> values) {
  Complex total = 0.0;
  for (int i = 0; i < grid.n_q; ++i) {
    for (int j = 0; j < grid.n_p; ++j) total += grid.weight(i, j) * values[grid.index(i, j)];
  }
  return total;
}

kernels::Stats stats(const PhaseGrid& grid, std::span<const Complex> values, double radius2) {
  kernels::Stats s;
  s.max_abs = -1.0;
  double l2 = 0.0;
  for (int i = 0; i < grid.n_q; ++i) {
    for (int j = 0; j < grid.n_p; ++j) {
      const Complex v = values[grid.index(i, j)];
      s.imag_max = std::max(s.imag_max, std::abs(v.imag()));
      const double q = grid.q(i);
      const double p = grid.p(j);
      if (q * q + p * p > radius2) continue;
      l2 += grid.weight(i, j) * std::norm(v);
      if (std::abs(v) > s.max_abs) {
        s.max_abs = std::abs(v);
        s.arg_i = i;
        s.arg_j = j;
      }
    }
  }
  if (s.max_abs < 0.0) throw std::invalid_argument("stats: region contains no grid samples");
  s.l2 = std::sqrt(l2);
  return s;
}

}  // namespace fstar::reference

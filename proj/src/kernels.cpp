#include "fstar/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fstar::kernels {

void apply_thread_cap_from_env() {
  const char* env = std::getenv("FSTAR_THREADS");
  if (env == nullptr) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || n <= 0) return;
#ifdef _OPENMP
  omp_set_num_threads(static_cast<int>(n));
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<std::vector<std::vector<Complex>>> sample_partials(const PhaseGrid& grid, const Symbol& symbol,
                                                               int order, Exec exec) {
  std::vector<std::vector<std::vector<Complex>>> out(static_cast<std::size_t>(order) + 1);
  for (int a = 0; a <= order; ++a) {
    out[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(order - a) + 1,
                                            std::vector<Complex>(grid.size()));
  }
  for_each_row(grid.n_q, exec, [&](int i) {
    const double q = grid.q(i);
    for (int j = 0; j < grid.n_p; ++j) {
      const Partials d = symbol.partials(q, grid.p(j), order);
      const std::size_t idx = grid.index(i, j);
      for (int a = 0; a <= order; ++a) {
        for (int b = 0; a + b <= order; ++b) {
          out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)][idx] = d(a, b);
        }
      }
    }
  });
  return out;
}

namespace {

// Stencils for samples 0 and 1 of a line; the last two are their mirror images
// with the sign flipped.
constexpr double kEdge0[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
constexpr double kEdge1[5] = {-3.0, -10.0, 18.0, -6.0, 1.0};

template <class At>
Complex fd4_point(int k, int n, double h, At&& at) {
  if (k >= 2 && k <= n - 3) {
    return (-at(k + 2) + 8.0 * at(k + 1) - 8.0 * at(k - 1) + at(k - 2)) / (12.0 * h);
  }
  const double* c = (k == 0 || k == n - 1) ? kEdge0 : kEdge1;
  Complex acc = 0.0;
  if (k <= 1) {
    for (int t = 0; t < 5; ++t) acc += c[t] * at(t);
  } else {
    for (int t = 0; t < 5; ++t) acc -= c[t] * at(n - 1 - t);
  }
  return acc / (12.0 * h);
}

}  // namespace

std::vector<Complex> fd4(const PhaseGrid& grid, std::span<const Complex> values, int axis, Exec exec) {
  if (grid.n_q < 5 || grid.n_p < 5) throw std::invalid_argument("fd4 needs at least 5 samples per axis");
  if (values.size() != grid.size()) throw std::invalid_argument("fd4: value count does not match grid");
  std::vector<Complex> out(grid.size());
  if (axis == 0) {
    const double h = grid.dq();
    for_each_row(grid.n_q, exec, [&](int i) {
      for (int j = 0; j < grid.n_p; ++j) {
        out[grid.index(i, j)] =
            fd4_point(i, grid.n_q, h, [&](int r) { return values[grid.index(r, j)]; });
      }
    });
  } else {
    const double h = grid.dp();
    for_each_row(grid.n_q, exec, [&](int i) {
      for (int j = 0; j < grid.n_p; ++j) {
        out[grid.index(i, j)] =
            fd4_point(j, grid.n_p, h, [&](int c) { return values[grid.index(i, c)]; });
      }
    });
  }
  return out;
}

Complex weighted_sum(const PhaseGrid& grid, std::span<const Complex> values, Exec exec) {
  std::vector<Complex> rows(static_cast<std::size_t>(grid.n_q));
  for_each_row(grid.n_q, exec, [&](int i) {
    Complex acc = 0.0;
    for (int j = 0; j < grid.n_p; ++j) acc += grid.weight(i, j) * values[grid.index(i, j)];
    rows[static_cast<std::size_t>(i)] = acc;
  });
  Complex total = 0.0;
  for (const Complex& r : rows) total += r;
  return total;
}

Stats stats(const PhaseGrid& grid, std::span<const Complex> values, double radius2, Exec exec) {
  std::vector<Stats> rows(static_cast<std::size_t>(grid.n_q));
  std::vector<double> l2rows(static_cast<std::size_t>(grid.n_q));
  for_each_row(grid.n_q, exec, [&](int i) {
    Stats s;
    s.max_abs = -1.0;
    double l2 = 0.0;
    const double q = grid.q(i);
    for (int j = 0; j < grid.n_p; ++j) {
      const Complex v = values[grid.index(i, j)];
      s.imag_max = std::max(s.imag_max, std::abs(v.imag()));
      const double p = grid.p(j);
      if (q * q + p * p > radius2) continue;
      const double a = std::abs(v);
      l2 += grid.weight(i, j) * a * a;
      if (a > s.max_abs) {
        s.max_abs = a;
        s.arg_i = i;
        s.arg_j = j;
      }
    }
    rows[static_cast<std::size_t>(i)] = s;
    l2rows[static_cast<std::size_t>(i)] = l2;
  });
  Stats total;
  total.max_abs = -1.0;
  double l2 = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    total.imag_max = std::max(total.imag_max, rows[i].imag_max);
    l2 += l2rows[i];
    if (rows[i].max_abs > total.max_abs) {
      total.max_abs = rows[i].max_abs;
      total.arg_i = rows[i].arg_i;
      total.arg_j = rows[i].arg_j;
    }
  }
  if (total.max_abs < 0.0) throw std::invalid_argument("stats: region contains no grid samples");
  total.l2 = std::sqrt(l2);
  return total;
}

}  // namespace fstar::kernels

#pragma once

// OpenMP grid kernels. Every kernel parallelizes over q-rows only; reductions
// accumulate one partial per row and combine rows serially in index order, so
// results do not depend on the thread count.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fstar/grid.hpp"
#include "fstar/symbol.hpp"

namespace fstar {

enum class Exec { serial, parallel };

namespace kernels {

/// Applies FSTAR_THREADS (if set and positive) as the OpenMP thread cap.
void apply_thread_cap_from_env();
int max_threads();

template <class RowFn>
void for_each_row(int rows, Exec exec, RowFn&& fn) {
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < rows; ++i) fn(i);
  } else {
    for (int i = 0; i < rows; ++i) fn(i);
  }
}

/// values[i, j] = fn(q_i, p_j).
template <class PointFn>
std::vector<Complex> sample(const PhaseGrid& grid, PointFn&& fn, Exec exec = Exec::parallel) {
  std::vector<Complex> out(grid.size());
  for_each_row(grid.n_q, exec, [&](int i) {
    const double q = grid.q(i);
    for (int j = 0; j < grid.n_p; ++j) out[grid.index(i, j)] = fn(q, grid.p(j));
  });
  return out;
}

/// One array per mixed partial: result[a][b] for a + b <= order (b indexes the inner vector).
std::vector<std::vector<std::vector<Complex>>> sample_partials(const PhaseGrid& grid, const Symbol& symbol,
                                                               int order, Exec exec = Exec::parallel);

/// Fourth-order finite difference along q (axis 0) or p (axis 1): central in the
/// interior, one-sided five-point stencils on the two outermost samples.
std::vector<Complex> fd4(const PhaseGrid& grid, std::span<const Complex> values, int axis,
                         Exec exec = Exec::parallel);

/// sum_ij w_ij values_ij with trapezoid weights (no 1/(2 pi hbar)).
Complex weighted_sum(const PhaseGrid& grid, std::span<const Complex> values, Exec exec = Exec::parallel);

struct Stats {
  double max_abs = 0.0;  // over the region
  double l2 = 0.0;       // sqrt(sum w |v|^2) over the region
  double imag_max = 0.0; // over the whole grid
  int arg_i = 0;
  int arg_j = 0;
};

/// Region is q^2 + p^2 <= radius2 (pass +inf for the whole grid). Witness is the
/// first (row-major) sample attaining max |v|.
Stats stats(const PhaseGrid& grid, std::span<const Complex> values, double radius2,
            Exec exec = Exec::parallel);

}  // namespace kernels
}  // namespace fstar

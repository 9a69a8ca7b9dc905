// Wall-clock comparison of the OpenMP kernels against the serial reference.
//   bench_kernels [grid points per axis] [repetitions]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "fstar/kernels.hpp"
#include "fstar/phasespace.hpp"
#include "fstar/reference.hpp"
#include "fstar/starproduct.hpp"

using namespace fstar;

namespace {

template <class Fn>
double best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-22s %10.4f %10.4f %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  kernels::apply_thread_cap_from_env();
  const int n = argc > 1 ? std::atoi(argv[1]) : 513;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  PhaseGrid grid = default_grid();
  grid.n_q = grid.n_p = n;

  const Field w = fock_wigner(6, grid);
  const auto& v = w.values();
  volatile double sink = 0.0;

  std::printf("grid %dx%d, %d threads, best of %d\n", n, n, kernels::max_threads(), reps);
  std::printf("%-22s %10s %10s %9s\n", "kernel", "ref [s]", "omp [s]", "speedup");
  row("sample W_6",
      best_of(reps, [&] { sink = sink + reference::sample_symbol(grid, *w.symbol())[0].real(); }),
      best_of(reps, [&] { sink = sink + kernels::sample_partials(grid, *w.symbol(), 0)[0][0][0].real(); }));
  row("fd4 d/dq", best_of(reps, [&] { sink = sink + reference::fd4(grid, v, 0)[1].real(); }),
      best_of(reps, [&] { sink = sink + kernels::fd4(grid, v, 0)[1].real(); }));
  row("fd4 d/dp", best_of(reps, [&] { sink = sink + reference::fd4(grid, v, 1)[1].real(); }),
      best_of(reps, [&] { sink = sink + kernels::fd4(grid, v, 1)[1].real(); }));
  row("trapezoid", best_of(reps, [&] { sink = sink + reference::weighted_sum(grid, v).real(); }),
      best_of(reps, [&] { sink = sink + kernels::weighted_sum(grid, v).real(); }));
  row("stats r<4", best_of(reps, [&] { sink = sink + reference::stats(grid, v, 16.0).l2; }),
      best_of(reps, [&] { sink = sink + kernels::stats(grid, v, 16.0).l2; }));
  const Field h = fock_wigner(2, grid);
  row("fstar_apply sqrt_n",
      best_of(reps, [&] {
        sink = sink + fstar_apply(h, w, DeformationSpec::sqrt_n(), 1.0, StarOrder::first, Exec::serial).at(0, 0).real();
      }),
      best_of(reps, [&] {
        sink = sink + fstar_apply(h, w, DeformationSpec::sqrt_n(), 1.0, StarOrder::first, Exec::parallel).at(0, 0).real();
      }));
  return 0;
}

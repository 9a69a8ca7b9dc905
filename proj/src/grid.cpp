#include "fstar/grid.hpp"

#include <cmath>
#include <string>

#include "fstar/errors.hpp"

namespace fstar {

void PhaseGrid::validate() const {
  if (n_q < 2 || n_p < 2) throw OutOfRange("grid needs at least 2 samples per axis");
  if (!(q_max > q_min) || !(p_max > p_min) || !std::isfinite(q_max - q_min) || !std::isfinite(p_max - p_min)) {
    throw OutOfRange("grid bounds must be finite with max > min");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw OutOfRange("grid hbar must be finite and > 0");
  if (!(offset >= 0.0 && offset < 1.0)) throw OutOfRange("grid offset must lie in [0, 1)");
}

PhaseGrid default_grid(double hbar) {
  PhaseGrid grid;
  grid.hbar = hbar;
  return grid;
}

}  // namespace fstar

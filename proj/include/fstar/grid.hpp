#pragma once

#include <cstddef>

namespace fstar {

/// Uniform rectangular (q, p) sample lattice.
///
/// Sample i along q sits at q_min + (i + offset) * dq with dq = (q_max - q_min)/(n_q - 1);
/// offset = 0.5 shifts by half a cell so a symmetric grid never contains the origin.
struct PhaseGrid {
  double q_min = -8.0;
  double q_max = 8.0;
  double p_min = -8.0;
  double p_max = 8.0;
  int n_q = 513;
  int n_p = 513;
  double hbar = 1.0;
  double offset = 0.5;

  /// Throws OutOfRange on empty spacing, n < 2, hbar <= 0 or offset outside [0, 1).
  void validate() const;

  double dq() const { return (q_max - q_min) / (n_q - 1); }
  double dp() const { return (p_max - p_min) / (n_p - 1); }
  double q(int i) const { return q_min + (i + offset) * dq(); }
  double p(int j) const { return p_min + (j + offset) * dp(); }
  std::size_t size() const { return static_cast<std::size_t>(n_q) * static_cast<std::size_t>(n_p); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_p) + static_cast<std::size_t>(j);
  }

  /// Trapezoid weight of sample (i, j) without the 1/(2 pi hbar) measure.
  double weight(int i, int j) const {
    const double wq = (i == 0 || i == n_q - 1) ? 0.5 : 1.0;
    const double wp = (j == 0 || j == n_p - 1) ? 0.5 : 1.0;
    return wq * wp * dq() * dp();
  }

  friend bool operator==(const PhaseGrid&, const PhaseGrid&) = default;
};

/// The default [-8, 8]^2 lattice with 513^2 samples and half-cell offset.
PhaseGrid default_grid(double hbar = 1.0);

}  // namespace fstar

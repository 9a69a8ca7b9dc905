#pragma once

// Straight serial loops used as the reference for the OpenMP kernels in tests
// and the benchmark. They favour readability over speed.

#include <span>
#include <vector>

#include "fstar/grid.hpp"
#include "fstar/kernels.hpp"
#include "fstar/symbol.hpp"

namespace fstar::reference {

std::vector<Complex> sample_symbol(const PhaseGrid& grid, const Symbol& symbol);

/// Fourth-order differences with explicit per-position coefficient tables.
std::vector<Complex> fd4(const PhaseGrid& grid, std::span<const Complex> values, int axis);

/// Trapezoid rule written as a plain double loop over (i, j).
Complex weighted_sum(const PhaseGrid& grid, std::span<const Complex> values);

kernels::Stats stats(const PhaseGrid& grid, std::span<const Complex> values, double radius2);

}  // namespace fstar::reference

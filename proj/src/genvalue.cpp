#include "fstar/genvalue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <set>

#include "fstar/errors.hpp"
#include "fstar/phasespace.hpp"

namespace fstar {

std::optional<double> ResidualReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras) {
    if (k == key) return v;
  }
  return std::nullopt;
}

HamiltonianField build_hamiltonian(const DeformationSpec& spec, const PhaseGrid& grid, double omega, Exec exec) {
  grid.validate();
  if (!(omega > 0.0)) throw OutOfRange("omega must be > 0");
  const double hbar = grid.hbar;
  const double scale = 0.5 * hbar * omega;
  auto profile = profile_in_number([spec, scale](const Series<double>& n) { return spec.energy_sum(n) * scale; });
  auto symbol = std::make_shared<RadialSymbol>(std::move(profile), hbar);
  auto values = kernels::sample(
      grid, [&](double q, double p) { return Complex(scale * spec.energy_sum(number_symbol(q, p, hbar))); }, exec);
  Field field(grid, std::move(values), "H[" + spec.to_string() + "]", std::move(symbol));
  return {std::move(field), spec, hbar, omega};
}

void fill_stats(ResidualReport& report, const Field& residual, double radius2, Exec exec) {
  const PhaseGrid& g = residual.grid();
  const kernels::Stats s = kernels::stats(g, residual.values(), radius2, exec);
  report.max_abs = s.max_abs;
  report.l2 = s.l2;
  report.imag_max = s.imag_max;
  report.witness = {g.q(s.arg_i), g.p(s.arg_j), residual.at(s.arg_i, s.arg_j)};
  report.grid = g;
}

namespace {

struct GenvalueFields {
  Field product;  // H *_f W_n
  Field residual;
  double energy;
};

GenvalueFields compute_genvalue(const DeformationSpec& spec, int n, const PhaseGrid& grid, double omega,
                                StarOrder order, Exec exec) {
  if (n < 0) throw OutOfRange("genvalue index n must be >= 0");
  const Field w = fock_wigner(n, grid, exec);
  const double energy = spectrum(spec, n, grid.hbar, omega).back().energy;
  Field product = [&] {
    if (spec.kind() == DeformationKind::identity) {
      const PolySymbol h = Complex(0.5 * omega) * (PolySymbol::q() * PolySymbol::q() + PolySymbol::p() * PolySymbol::p());
      return moyal_apply(h, w, grid.hbar, exec);
    }
    const HamiltonianField h = build_hamiltonian(spec, grid, omega, exec);
    return fstar_apply(h.field, w, spec, grid.hbar, order, exec);
  }();
  Field residual = (product - Complex(energy) * w).relabeled("genvalue residual");
  return {std::move(product), std::move(residual), energy};
}

}  // namespace

Field genvalue_residual_field(const DeformationSpec& spec, int n, const PhaseGrid& grid, double omega,
                              StarOrder order, Exec exec) {
  return compute_genvalue(spec, n, grid, omega, order, exec).residual;
}

ResidualReport genvalue_residual(const DeformationSpec& spec, int n, const PhaseGrid& grid, double omega,
                                 StarOrder order, double r_cut, Exec exec) {
  const GenvalueFields g = compute_genvalue(spec, n, grid, omega, order, exec);
  const bool moyal = spec.kind() == DeformationKind::identity;
  ResidualReport report;
  report.identity_name = moyal ? "genvalue/moyal" : "genvalue/fstar";
  report.spec = spec.to_string();
  report.n = n;
  report.hbar = grid.hbar;
  report.omega = omega;
  report.order = moyal ? StarOrder::exact : order;
  fill_stats(report, g.residual, r_cut * r_cut * grid.hbar, exec);
  // imag_max refers to H *_f W_n itself; E_n W_n is real.
  report.imag_max = kernels::stats(grid, g.product.values(), std::numeric_limits<double>::infinity(), exec).imag_max;
  report.extras = {{"energy", g.energy},
                   {"phase_average", integrate(g.product, exec).real()},
                   {"r_cut", r_cut}};
  return report;
}

Field bracket_term(const Field& h, const Field& w, const DeformationSpec& spec, double hbar, Exec exec) {
  if (!(h.grid() == w.grid())) throw std::invalid_argument("bracket operands live on different grids");
  const PhaseGrid& grid = h.grid();
  const Field amp = amplitude_field(spec, grid, hbar, exec);
  const auto hd = partial_samples(h, 1, exec);
  const auto wd = partial_samples(w, 1, exec);
  std::vector<Complex> values(grid.size());
  kernels::for_each_row(grid.n_q, exec, [&](int i) {
    for (int j = 0; j < grid.n_p; ++j) {
      const std::size_t x = grid.index(i, j);
      values[x] = Complex(0.0, 0.5 * hbar) * amp.values()[x] * (hd[1][0][x] * wd[0][1][x] - hd[0][1][x] * wd[1][0][x]);
    }
  });
  return Field(grid, std::move(values), "bracket(" + h.label() + ", " + w.label() + ")");
}

CommutatorResult commutator_report(const DeformationSpec& spec, const PhaseGrid& grid, StarOrder order,
                                   Exec exec) {
  grid.validate();
  const double hbar = grid.hbar;
  const double r = 1.0 / std::sqrt(2.0);
  auto f_symbol = std::make_shared<RadialSymbol>(deformation_profile(spec), hbar);
  const Field a_field = Field::from_symbol(
      grid, std::make_shared<AffineTimesSymbol>(0.0, r, Complex(0.0, r), f_symbol), "A", exec);
  const Field a_bar_field = Field::from_symbol(
      grid, std::make_shared<AffineTimesSymbol>(0.0, r, Complex(0.0, -r), f_symbol), "conj(A)", exec);

  Field commutator = star_commutator(a_field, a_bar_field, spec, hbar, order, exec);

  Field target(grid,
               kernels::sample(
                   grid, [&](double q, double p) { return Complex(spec.commutator(number_symbol(q, p, hbar))); },
                   exec),
               "target");
  Field oracle(grid,
               kernels::sample(
                   grid,
                   [&](double q, double p) {
                     const double n = number_symbol(q, p, hbar);
                     const Series<double> fs = spec.f(Series<double>::variable(1, n));
                     const double f = fs[0];
                     const double df = fs[1];
                     return Complex(spec.amplitude(n) * (f * f + 2.0 * n * f * df));
                   },
                   exec),
               "closed form");
  Field deviation = (commutator - target).relabeled("commutator - target");

  CommutatorResult out{ResidualReport{}, std::move(commutator), std::move(target), std::move(oracle),
                       std::move(deviation)};
  ResidualReport& report = out.report;
  report.identity_name = "commutator";
  report.spec = spec.to_string();
  report.hbar = hbar;
  report.order = order;
  const double everywhere = std::numeric_limits<double>::infinity();
  fill_stats(report, out.deviation, everywhere, exec);
  report.imag_max = kernels::stats(grid, out.commutator.values(), everywhere, exec).imag_max;
  const Field oracle_dev = out.commutator - out.oracle;
  report.extras = {{"oracle_max_abs", kernels::stats(grid, oracle_dev.values(), everywhere, exec).max_abs},
                   {"oracle_l2", kernels::stats(grid, oracle_dev.values(), everywhere, exec).l2}};
  return out;
}

double fit_loglog_slope(const std::vector<DefectRow>& rows) {
  std::set<double> distinct;
  for (const auto& row : rows) distinct.insert(row.hbar);
  if (distinct.size() < 3) throw OutOfRange("slope fit needs at least 3 distinct hbar values");
  if (std::all_of(rows.begin(), rows.end(), [](const DefectRow& r) { return r.defect < kDegenerateDefect; })) {
    throw DegenerateFit("all associativity defects are below 1e-14");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (const auto& row : rows) {
    if (!(row.defect > 0.0)) continue;
    const double x = std::log(row.hbar);
    const double y = std::log(row.defect);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) throw DegenerateFit("fewer than two non-zero defects");
  const double denom = m * sxx - sx * sx;
  return (m * sxy - sx * sy) / denom;
}

namespace {

void check_hbar_list(const std::vector<double>& hbar_list) {
  std::set<double> distinct(hbar_list.begin(), hbar_list.end());
  if (distinct.size() < 3) throw OutOfRange("associativity scan needs at least 3 distinct hbar values");
  if (*distinct.begin() <= 0.0) throw OutOfRange("hbar values must be > 0");
  if (*distinct.rbegin() / *distinct.begin() < 100.0 * (1.0 - 1e-12)) {
    throw OutOfRange("hbar values must span at least two decades");
  }
}

AssociativityResult finish(std::vector<DefectRow> rows) {
  AssociativityResult result;
  result.rows = std::move(rows);
  try {
    result.slope = fit_loglog_slope(result.rows);
  } catch (const DegenerateFit&) {
    result.exact_zero = true;
  }
  return result;
}

}  // namespace

AssociativityResult associativity_defect(const Field& k, const Field& g, const Field& h,
                                         const DeformationSpec& spec, const std::vector<double>& hbar_list,
                                         StarOrder order, Exec exec) {
  check_hbar_list(hbar_list);
  std::vector<DefectRow> rows;
  for (double hbar : hbar_list) {
    const Field left = fstar_apply(fstar_apply(k, g, spec, hbar, order, exec), h, spec, hbar, order, exec);
    const Field right = fstar_apply(k, fstar_apply(g, h, spec, hbar, order, exec), spec, hbar, order, exec);
    const Field defect = left - right;
    rows.push_back({hbar, kernels::stats(defect.grid(), defect.values(), std::numeric_limits<double>::infinity(), exec).l2});
  }
  return finish(std::move(rows));
}

AssociativityResult associativity_defect(const PolySymbol& k, const PolySymbol& g, const PolySymbol& h,
                                         const PhaseGrid& grid, const DeformationSpec& spec,
                                         const std::vector<double>& hbar_list, StarOrder order, Exec exec) {
  if (spec.kind() != DeformationKind::identity) {
    return associativity_defect(Field::from_symbol(grid, make_symbol(k), "k", exec),
                                Field::from_symbol(grid, make_symbol(g), "g", exec),
                                Field::from_symbol(grid, make_symbol(h), "h", exec), spec, hbar_list, order, exec);
  }
  check_hbar_list(hbar_list);
  std::vector<DefectRow> rows;
  for (double hbar : hbar_list) {
    const PolySymbol defect = moyal_exact(moyal_exact(k, g, hbar), h, hbar) - moyal_exact(k, moyal_exact(g, h, hbar), hbar);
    const auto values = kernels::sample(grid, [&](double q, double p) { return defect.evaluate(q, p); }, exec);
    rows.push_back({hbar, kernels::stats(grid, values, std::numeric_limits<double>::infinity(), exec).l2});
  }
  return finish(std::move(rows));
}

}  // namespace fstar

#include "fstar/starproduct.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "fstar/errors.hpp"
#include "fstar/phasespace.hpp"
#include "fstar/series.hpp"

namespace fstar {

StarOrder parse_star_order(std::string_view text) {
  if (text == "first") return StarOrder::first;
  if (text == "second") return StarOrder::second;
  if (text == "exact") return StarOrder::exact;
  throw ParseError("unknown star order '" + std::string(text) + "'", 0, {"first", "second", "exact"});
}

const char* to_string(StarOrder order) {
  switch (order) {
    case StarOrder::first:
      return "first";
    case StarOrder::second:
      return "second";
    case StarOrder::exact:
      return "exact";
  }
  return "?";
}

namespace {

int truncation(StarOrder order) {
  switch (order) {
    case StarOrder::first:
      return 1;
    case StarOrder::second:
      return 2;
    case StarOrder::exact:
      break;
  }
  throw std::invalid_argument("order=exact is only defined for polynomial operands (use moyal_exact)");
}

}  // namespace

RadialProfile amplitude_profile(const DeformationSpec& spec) {
  return profile_in_number([spec](const Series<double>& n) { return spec.amplitude(n); });
}

RadialProfile deformation_profile(const DeformationSpec& spec) {
  return profile_in_number([spec](const Series<double>& n) { return spec.f(n); });
}

Field amplitude_field(const DeformationSpec& spec, const PhaseGrid& grid, double hbar, Exec exec) {
  if (!(hbar > 0.0)) throw OutOfRange("hbar must be > 0");
  auto values = kernels::sample(
      grid, [&](double q, double p) { return Complex(spec.amplitude(number_symbol(q, p, hbar))); }, exec);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k].real())) {
      const int i = static_cast<int>(k / static_cast<std::size_t>(grid.n_p));
      const int j = static_cast<int>(k % static_cast<std::size_t>(grid.n_p));
      throw SingularAmplitude("F(n) is not finite at (q, p) = (" + std::to_string(grid.q(i)) + ", " +
                              std::to_string(grid.p(j)) + ") for " + spec.to_string());
    }
  }
  auto symbol = std::make_shared<RadialSymbol>(amplitude_profile(spec), hbar);
  return Field(grid, std::move(values), "F[" + spec.to_string() + "]", std::move(symbol));
}

Field moyal_apply(const PolySymbol& h, const Field& w, double hbar, Exec exec) {
  const int degree = std::max(h.max_degree(), 0);
  const PhaseGrid& grid = w.grid();
  const auto wd = partial_samples(w, degree, exec);

  // Coefficient and h-derivative for every (m, j) term of the series.
  struct Term {
    Complex scale;
    PolySymbol h_derivative;
    int wq;
    int wp;
  };
  std::vector<Term> terms;
  Complex scale = 1.0;
  for (int m = 0; m <= degree; ++m) {
    if (m > 0) scale *= Complex(0.0, 0.5 * hbar) / static_cast<double>(m);
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
      PolySymbol hd = h.derivative(m - j, j);
      if (!hd.is_zero()) terms.push_back({scale * (((j & 1) ? -1.0 : 1.0) * binom), std::move(hd), j, m - j});
      binom = binom * (m - j) / (j + 1);
    }
  }

  std::vector<Complex> values(grid.size());
  kernels::for_each_row(grid.n_q, exec, [&](int i) {
    const double q = grid.q(i);
    for (int j = 0; j < grid.n_p; ++j) {
      const double p = grid.p(j);
      const std::size_t idx = grid.index(i, j);
      Complex acc = 0.0;
      for (const Term& t : terms) {
        acc += t.scale * t.h_derivative.evaluate(q, p) *
               wd[static_cast<std::size_t>(t.wq)][static_cast<std::size_t>(t.wp)][idx];
      }
      values[idx] = acc;
    }
  });
  return Field(grid, std::move(values), "(" + to_string(h) + ")*M " + w.label());
}

Field fstar_apply(const Field& k, const Field& g, const DeformationSpec& spec, double hbar, StarOrder order,
                  Exec exec) {
  if (!(k.grid() == g.grid())) throw std::invalid_argument("f-star operands live on different grids");
  const int t = truncation(order);
  const PhaseGrid& grid = k.grid();
  const Field amp = amplitude_field(spec, grid, hbar, exec);
  const std::string label = "(" + k.label() + ")*f(" + g.label() + ")";

  using Table = std::vector<std::vector<std::vector<Complex>>>;
  auto combine = [&](const Table& kd, const Table& gd) {
    std::vector<Complex> values(grid.size());
    kernels::for_each_row(grid.n_q, exec, [&](int i) {
      for (int j = 0; j < grid.n_p; ++j) {
        const std::size_t x = grid.index(i, j);
        const Complex f = amp.values()[x];
        Complex v = kd[0][0][x] * gd[0][0][x] +
                    Complex(0.0, 0.5 * hbar) * f * (kd[1][0][x] * gd[0][1][x] - kd[0][1][x] * gd[1][0][x]);
        if (t == 2) {
          const Complex p2 =
              kd[2][0][x] * gd[0][2][x] - 2.0 * kd[1][1][x] * gd[1][1][x] + kd[0][2][x] * gd[2][0][x];
          v -= (hbar * hbar / 8.0) * f * f * p2;
        }
        values[x] = v;
      }
    });
    return values;
  };

  SymbolPtr symbol;
  if (k.has_symbol() && g.has_symbol()) {
    symbol = std::make_shared<StarProductSymbol>(k.symbol(), g.symbol(), amp.symbol(), hbar, t);
  }
  return Field(grid, combine(partial_samples(k, t, exec), partial_samples(g, t, exec)), label, std::move(symbol));
}

Field star_commutator(const Field& k, const Field& g, const DeformationSpec& spec, double hbar, StarOrder order,
                      Exec exec) {
  const Field kg = fstar_apply(k, g, spec, hbar, order, exec);
  const Field gk = fstar_apply(g, k, spec, hbar, order, exec);
  return (Complex(1.0 / hbar) * (kg - gk)).relabeled("[" + k.label() + ", " + g.label() + "]_f / hbar");
}

}  // namespace fstar

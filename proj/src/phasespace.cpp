#include "fstar/phasespace.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "fstar/errors.hpp"

namespace fstar {

double laguerre(int n, double x) { return assoc_laguerre(n, 0.0, x); }

double assoc_laguerre(int n, double alpha, double x) {
  if (n < 0) return 0.0;
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// w(u) = 2 e^{-u} sum_n c_n (-1)^n L_n(2u) and its u-derivatives.
RadialProfile laguerre_mixture_profile(std::vector<double> coeffs) {
  return [coeffs = std::move(coeffs)](double u, std::span<double> out) {
    const int top = static_cast<int>(coeffs.size()) - 1;
    const int order = static_cast<int>(out.size()) - 1;
    const double x = 2.0 * u;
    // s[k] = sum_n c_n (-1)^n L_{n-k}^(k)(x)
    std::vector<double> s(out.size(), 0.0);
    for (int k = 0; k <= order && k <= top; ++k) {
      double prev = 0.0;
      double cur = 1.0;  // L_0^(k)
      double acc = 0.0;
      for (int m = 0; m + k <= top; ++m) {
        const int n = m + k;
        acc += coeffs[static_cast<std::size_t>(n)] * ((n & 1) ? -1.0 : 1.0) * cur;
        const double next = ((2 * m + 1 + k - x) * cur - (m + k) * prev) / (m + 1);
        prev = cur;
        cur = next;
      }
      s[static_cast<std::size_t>(k)] = acc;
    }
    const double e = 2.0 * std::exp(-u);
    for (int m = 0; m <= order; ++m) {
      double acc = 0.0;
      double binom = 1.0;
      double two_k = 1.0;
      for (int k = 0; k <= m; ++k) {
        acc += binom * two_k * s[static_cast<std::size_t>(k)];
        binom = binom * (m - k) / (k + 1);
        two_k *= 2.0;
      }
      out[static_cast<std::size_t>(m)] = ((m & 1) ? -e : e) * acc;
    }
  };
}

}  // namespace

RadialProfile fock_profile(int n) {
  if (n < 0) throw OutOfRange("Fock index must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c.back() = 1.0;
  return laguerre_mixture_profile(std::move(c));
}

Field fock_wigner(int n, const PhaseGrid& grid, Exec exec) {
  grid.validate();
  auto symbol = std::make_shared<RadialSymbol>(fock_profile(n), grid.hbar);
  return Field::from_symbol(grid, std::move(symbol), "W_" + std::to_string(n), exec);
}

WignerWeights wigner_weights(const DeformationSpec& spec, double zeta_abs2, double tol, int n_max) {
  const std::vector<double> logs = coherent_log_terms(spec, zeta_abs2, tol, n_max);
  double sum = 0.0;
  for (auto it = logs.rbegin(); it != logs.rend(); ++it) sum += std::exp(*it);
  const double log_norm2 = -std::log(sum);  // ln N_f^2
  WignerWeights w;
  w.spec = spec;
  w.zeta_abs2 = zeta_abs2;
  w.truncation_n = static_cast<int>(logs.size()) - 1;
  w.weights.reserve(logs.size());
  for (double lt : logs) w.weights.push_back(std::exp(lt + log_norm2));
  return w;
}

Field fcs_wigner(const WignerWeights& weights, const PhaseGrid& grid, Exec exec) {
  grid.validate();
  auto symbol = std::make_shared<RadialSymbol>(laguerre_mixture_profile(weights.weights), grid.hbar);
  return Field::from_symbol(grid, std::move(symbol), "W^f[" + weights.spec.to_string() + "]", exec);
}

Field fcs_wigner(const DeformationSpec& spec, double zeta_abs2, const PhaseGrid& grid, double tol,
                 Exec exec) {
  return fcs_wigner(wigner_weights(spec, zeta_abs2, tol), grid, exec);
}

Complex integrate(const Field& field, Exec exec) {
  const PhaseGrid& g = field.grid();
  return kernels::weighted_sum(g, field.values(), exec) / (2.0 * std::numbers::pi * g.hbar);
}

std::vector<std::vector<std::vector<Complex>>> partial_samples(const Field& field, int order, Exec exec) {
  const PhaseGrid& g = field.grid();
  if (field.has_symbol()) return kernels::sample_partials(g, *field.symbol(), order, exec);

  std::vector<std::vector<std::vector<Complex>>> out(static_cast<std::size_t>(order) + 1);
  for (int a = 0; a <= order; ++a) out[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(order - a) + 1);
  out[0][0].assign(field.values().begin(), field.values().end());
  for (int a = 0; a <= order; ++a) {
    if (a > 0) out[static_cast<std::size_t>(a)][0] = kernels::fd4(g, out[static_cast<std::size_t>(a) - 1][0], 0, exec);
    for (int b = 1; a + b <= order; ++b) {
      out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          kernels::fd4(g, out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b) - 1], 1, exec);
    }
  }
  return out;
}

std::pair<Field, Field> gradient(const Field& field, DerivativeMethod method, Exec exec) {
  const PhaseGrid& g = field.grid();
  if (method == DerivativeMethod::fd4) {
    return {Field(g, kernels::fd4(g, field.values(), 0, exec), "d_q " + field.label()),
            Field(g, kernels::fd4(g, field.values(), 1, exec), "d_p " + field.label())};
  }
  if (!field.has_symbol()) {
    throw ProfileUnavailable("field '" + field.label() + "' has no analytic profile");
  }
  auto d = kernels::sample_partials(g, *field.symbol(), 1, exec);
  return {Field(g, std::move(d[1][0]), "d_q " + field.label()),
          Field(g, std::move(d[0][1]), "d_p " + field.label())};
}

}  // namespace fstar

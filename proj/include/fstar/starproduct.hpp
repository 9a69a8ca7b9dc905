#pragma once

// Star products on grid fields: the Moyal product with a polynomial left
// factor, and the truncated f-star product with amplitude F(n).

#include <string_view>

#include "fstar/deformation.hpp"
#include "fstar/field.hpp"
#include "fstar/polysymbol.hpp"
#include "fstar/series.hpp"

namespace fstar {

enum class StarOrder { first, second, exact };

StarOrder parse_star_order(std::string_view text);
const char* to_string(StarOrder order);

/// n = (q^2 + p^2) / (2 hbar), the classical number symbol.
inline double number_symbol(double q, double p, double hbar) { return (q * q + p * p) / (2.0 * hbar); }

/// Radial profile of g(n) with n = u/2, where fn maps a Series<double> in n to
/// one in g. Derivatives are taken with respect to u.
template <class Fn>
RadialProfile profile_in_number(Fn fn) {
  return [fn](double u, std::span<double> out) {
    const int order = static_cast<int>(out.size()) - 1;
    Series<double> n(order, 0.5 * u);
    if (order >= 1) n[1] = 0.5;
    const Series<double> v = fn(n);
    for (int k = 0; k <= order; ++k) out[static_cast<std::size_t>(k)] = v.derivative(k);
  };
}

/// Radial profile of F(n(u)) with u = (q^2 + p^2)/hbar, i.e. n = u/2.
RadialProfile amplitude_profile(const DeformationSpec& spec);
/// Radial profile of f(n(u)).
RadialProfile deformation_profile(const DeformationSpec& spec);

/// F(n) sampled on the grid; throws SingularAmplitude on any non-finite sample.
Field amplitude_field(const DeformationSpec& spec, const PhaseGrid& grid, double hbar,
                      Exec exec = Exec::parallel);

/// h *_M w = sum_{m <= deg h} (i hbar/2)^m/m! sum_j (-1)^j C(m,j)
///           (d_q^{m-j} d_p^j h)(d_p^{m-j} d_q^j w).
/// Derivatives of w come from its symbol when attached, else repeated fd4.
Field moyal_apply(const PolySymbol& h, const Field& w, double hbar, Exec exec = Exec::parallel);

/// k *_f g = k g + (i hbar/2) F(n) {k, g}            (order = first)
///           - (hbar^2/8) F(n)^2 P^2(k, g)           (order = second, experimental)
/// where {k,g} = k_q g_p - k_p g_q and P^2 is the second bidifferential power
/// with F held constant. When both inputs carry symbols the result carries a
/// symbol as well, so products can be nested.
Field fstar_apply(const Field& k, const Field& g, const DeformationSpec& spec, double hbar, StarOrder order,
                  Exec exec = Exec::parallel);

/// (k *_f g - g *_f k) / hbar.
Field star_commutator(const Field& k, const Field& g, const DeformationSpec& spec, double hbar,
                      StarOrder order, Exec exec = Exec::parallel);

}  // namespace fstar

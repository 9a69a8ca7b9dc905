#include "fstar/deformation.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "fstar/errors.hpp"

namespace fstar {

DeformationSpec DeformationSpec::identity() { return DeformationSpec(); }

DeformationSpec DeformationSpec::sqrt_n() {
  DeformationSpec spec;
  spec.kind_ = DeformationKind::sqrt_n;
  return spec;
}

DeformationSpec DeformationSpec::qdef(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw NonPositiveValue("qdef requires a finite q > 0");
  }
  DeformationSpec spec;
  spec.kind_ = DeformationKind::qdef;
  spec.params_["q"] = q;
  return spec;
}

DeformationSpec DeformationSpec::from_expr(std::string_view source) {
  DeformationSpec spec;
  spec.kind_ = DeformationKind::expr;
  spec.expr_ = Expr::parse(source);
  spec.expr_source_ = std::string(source);
  return spec;
}

namespace {

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string DeformationSpec::to_string() const {
  switch (kind_) {
    case DeformationKind::identity:
      return "identity";
    case DeformationKind::sqrt_n:
      return "sqrt_n";
    case DeformationKind::qdef:
      return "qdef:q=" + format_real(params_.at("q"));
    case DeformationKind::expr:
      return "expr:" + *expr_source_;
  }
  return {};
}

void DeformationSpec::validate(int n_max) const {
  for (int j = 1; j <= n_max; ++j) {
    const double v = f(static_cast<double>(j));
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw NonPositiveValue("f(" + std::to_string(j) + ") = " + format_real(v) +
                             " is not a finite positive value for " + to_string());
    }
  }
}

DeformationSpec parse_deformation(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  if (head == "identity" || head == "sqrt_n") {
    if (colon != std::string_view::npos) {
      throw ParseError("'" + std::string(head) + "' takes no parameters", colon, {"end of input"});
    }
    return head == "identity" ? DeformationSpec::identity() : DeformationSpec::sqrt_n();
  }
  if (head == "qdef") {
    const std::size_t base = colon + 1;
    if (colon == std::string_view::npos || body.substr(0, 2) != "q=") {
      throw ParseError("qdef needs a parameter", colon == std::string_view::npos ? text.size() : base,
                       {"'q='"});
    }
    const std::string_view number = body.substr(2);
    double q = 0.0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), q);
    if (number.empty() || ec != std::errc() || ptr != number.data() + number.size()) {
      throw ParseError("malformed q value", base + 2, {"number"});
    }
    if (!(q > 0.0)) throw ParseError("q must be positive", base + 2, {"positive number"});
    return DeformationSpec::qdef(q);
  }
  if (head == "expr") {
    if (colon == std::string_view::npos) throw ParseError("expr needs a body", text.size(), {"':'"});
    try {
      return DeformationSpec::from_expr(body);
    } catch (const ParseError& e) {
      // Report positions relative to the whole spec string.
      throw ParseError("invalid expression '" + std::string(body) + "'", colon + 1 + e.position(),
                       e.expected());
    }
  }
  throw ParseError("unknown deformation '" + std::string(head) + "'", 0,
                   {"identity", "sqrt_n", "qdef:q=<real>", "expr:<expression>"});
}

std::vector<DeformationSpec> registry_specs() {
  return {DeformationSpec::identity(), DeformationSpec::sqrt_n(), DeformationSpec::qdef(1.2),
          DeformationSpec::from_expr("sqrt(1+0.1*n)")};
}

double eval_f(const DeformationSpec& spec, double n) {
  const double v = spec.f(n);
  if (!std::isfinite(v) || v < 0.0 || (n > 0.0 && v == 0.0)) {
    throw NonPositiveValue("f(" + format_real(n) + ") = " + format_real(v) + " for " +
                           spec.to_string());
  }
  return v;
}

FFactorialTable::FFactorialTable(DeformationSpec spec, int n_max) : spec_(std::move(spec)) {
  if (n_max < 0) throw OutOfRange("f-factorial table needs n_max >= 0");
  spec_.validate(n_max);
  log_values_.resize(static_cast<std::size_t>(n_max) + 1);
  log_values_[0] = 0.0;
  for (int k = 1; k <= n_max; ++k) {
    log_values_[static_cast<std::size_t>(k)] =
        log_values_[static_cast<std::size_t>(k) - 1] + 0.5 * std::log(spec_.f_squared(static_cast<double>(k)));
  }
}

double FFactorialTable::log_value(int n) const {
  if (n < 0 || n > n_max()) {
    throw OutOfRange("f-factorial index " + std::to_string(n) + " outside [0, " +
                     std::to_string(n_max()) + "]");
  }
  return log_values_[static_cast<std::size_t>(n)];
}

double f_factorial(const FFactorialTable& table, int n) { return std::exp(table.log_value(n)); }

double amplitude_F(const DeformationSpec& spec, double n) {
  const double denom = spec.f(n) * spec.f(n + 1.0);
  const double value = spec.amplitude(n);
  if (denom == 0.0 || !std::isfinite(value)) {
    throw SingularAmplitude("F(n) is singular at n = " + format_real(n) + " for " + spec.to_string());
  }
  return value;
}

double commutator_target(const DeformationSpec& spec, double n) {
  eval_f(spec, n);
  eval_f(spec, n + 1.0);
  return spec.commutator(n);
}

std::vector<SpectrumRow> spectrum(const DeformationSpec& spec, int n_max, double hbar,
                                  double omega) {
  if (n_max < 0) throw OutOfRange("spectrum needs n_max >= 0");
  if (!(hbar > 0.0) || !(omega > 0.0)) throw OutOfRange("spectrum needs hbar > 0 and omega > 0");
  std::vector<SpectrumRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max) + 1);
  const double scale = 0.5 * hbar * omega;
  for (int n = 0; n <= n_max; ++n) {
    const double x = n;
    eval_f(spec, x + 1.0);
    if (n > 0) eval_f(spec, x);
    rows.push_back({n, scale * spec.energy_sum(x)});
  }
  return rows;
}

std::vector<double> coherent_log_terms(const DeformationSpec& spec, double zeta_abs2, double tol,
                                       int n_max) {
  if (!(zeta_abs2 >= 0.0) || !std::isfinite(zeta_abs2)) {
    throw OutOfRange("|zeta|^2 must be finite and >= 0");
  }
  const double log_z = zeta_abs2 > 0.0 ? std::log(zeta_abs2) : -std::numeric_limits<double>::infinity();

  std::vector<double> logs{0.0};
  double log_sum = 0.0;  // ln of the running sum
  double log_ffact = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    log_ffact += std::log(eval_f(spec, static_cast<double>(n)));
    const double lt = zeta_abs2 > 0.0 ? n * log_z - std::lgamma(n + 1.0) - 2.0 * log_ffact
                                      : -std::numeric_limits<double>::infinity();
    logs.push_back(lt);
    const bool decreasing = lt < logs[logs.size() - 2];
    if (decreasing && lt < std::log(tol) + log_sum) return logs;
    log_sum = std::max(log_sum, lt) + std::log1p(std::exp(std::min(log_sum, lt) - std::max(log_sum, lt)));
  }
  throw SeriesDivergence("coherent-state series for " + spec.to_string() + " with |zeta|^2 = " +
                         format_real(zeta_abs2) + " did not converge by n = " +
                         std::to_string(n_max));
}

double normalization_Nf(const DeformationSpec& spec, double zeta_abs2, double tol, int n_max) {
  const std::vector<double> logs = coherent_log_terms(spec, zeta_abs2, tol, n_max);
  // Sum in ascending magnitude order from the tail.
  double sum = 0.0;
  for (auto it = logs.rbegin(); it != logs.rend(); ++it) sum += std::exp(*it);
  return 1.0 / std::sqrt(sum);
}

}  // namespace fstar

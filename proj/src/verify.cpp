#include "fstar/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "fstar/deformation.hpp"
#include "fstar/genvalue.hpp"
#include "fstar/io.hpp"
#include "fstar/phasespace.hpp"
#include "fstar/polysymbol.hpp"
#include "fstar/starproduct.hpp"

namespace fstar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<int> index_list(int top, bool quick, std::vector<int> quick_list) {
  if (quick) return quick_list;
  std::vector<int> all(static_cast<std::size_t>(top + 1));
  for (int n = 0; n <= top; ++n) all[static_cast<std::size_t>(n)] = n;
  return all;
}

double max_of(double a, double b) { return std::max(a, b); }

CheckResult started(int id, std::string name) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

}  // namespace

CheckResult check_moyal_genvalue(const VerifyOptions& opts) {
  Timer timer;
  CheckResult r = started(1, "moyal_genvalue");
  const PhaseGrid grid = default_grid(1.0);
  double worst = 0.0, worst_imag = 0.0;
  for (int n : index_list(10, opts.quick, {0, 1, 4, 10})) {
    const ResidualReport rep =
        genvalue_residual(DeformationSpec::identity(), n, grid, 1.0, StarOrder::first, kDefaultRadiusCut, opts.exec);
    worst = max_of(worst, rep.max_abs);
    worst_imag = max_of(worst_imag, rep.imag_max);
  }
  r.seconds = timer.seconds();
  r.metrics = {{"max_abs", worst}, {"imag_max", worst_imag}, {"tol", 1e-8}};
  r.flags = {{"runtime_within_10s", r.seconds <= 10.0}};
  r.pass = worst <= 1e-8 && r.flags[0].second;
  return r;
}

CheckResult check_imaginary_part(const VerifyOptions& opts) {
  Timer timer;
  CheckResult r = started(2, "imaginary_part");
  const PhaseGrid grid = default_grid(1.0);
  double worst = 0.0;
  for (const DeformationSpec& spec : registry_specs()) {
    double spec_worst = 0.0;
    for (int n : index_list(10, opts.quick, {0, 3, 10})) {
      const ResidualReport rep = genvalue_residual(spec, n, grid, 1.0, StarOrder::first, kDefaultRadiusCut, opts.exec);
      spec_worst = max_of(spec_worst, rep.imag_max);
    }
    r.metrics.emplace_back("imag_max[" + spec.to_string() + "]", spec_worst);
    worst = max_of(worst, spec_worst);
  }
  r.seconds = timer.seconds();
  r.metrics.emplace_back("imag_max", worst);
  r.metrics.emplace_back("tol", 1e-10);
  r.pass = worst <= 1e-10;
  return r;
}

CheckResult check_normalization(const VerifyOptions& opts) {
  Timer timer;
  CheckResult r = started(3, "normalization");
  const PhaseGrid grid = default_grid(1.0);
  double fock = 0.0;
  for (int n : index_list(20, opts.quick, {0, 1, 7, 20})) {
    fock = max_of(fock, std::abs(integrate(fock_wigner(n, grid, opts.exec), opts.exec).real() - 1.0));
  }
  double coherent = 0.0;
  const std::vector<double> zetas = opts.quick ? std::vector<double>{1.0} : std::vector<double>{0.5, 1.0, 2.0};
  for (const DeformationSpec& spec : registry_specs()) {
    for (double z2 : zetas) {
      const Field w = fcs_wigner(spec, z2, grid, kDefaultSeriesTol, opts.exec);
      coherent = max_of(coherent, std::abs(integrate(w, opts.exec).real() - 1.0));
    }
  }
  r.seconds = timer.seconds();
  r.metrics = {{"fock_max_dev", fock}, {"coherent_max_dev", coherent}, {"tol", 1e-6}};
  r.pass = fock <= 1e-6 && coherent <= 1e-6;
  return r;
}

namespace {

PolySymbol random_polynomial(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  PolySymbol s;
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) {
      PolySymbol m = PolySymbol::constant(Complex(coef(rng), coef(rng)));
      for (int t = 0; t < a; ++t) m = m * PolySymbol::q();
      for (int t = 0; t < b; ++t) m = m * PolySymbol::p();
      s += m;
    }
  }
  return s;
}

double max_coefficient(const PolySymbol& s) {
  double m = 0.0;
  for (const auto& [mono, c] : s.terms()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

CheckResult check_moyal_algebra(const VerifyOptions& opts) {
  Timer timer;
  CheckResult r = started(4, "moyal_algebra");
  double commutator_dev = 0.0;
  for (double hbar : {1.0, 0.1, 0.01}) {
    const PolySymbol a = PolySymbol::a();
    const PolySymbol ab = PolySymbol::a_bar();
    const PolySymbol c = Complex(1.0 / hbar) * (moyal_exact(a, ab, hbar) - moyal_exact(ab, a, hbar));
    commutator_dev = max_of(commutator_dev, PolySymbol::max_coefficient_diff(c, PolySymbol::constant(1.0)));
  }
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> degree(0, 4);
  double relative = 0.0;
  const int trials = opts.quick ? 8 : 40;
  for (int t = 0; t < trials; ++t) {
    const PolySymbol k = random_polynomial(rng, degree(rng));
    const PolySymbol g = random_polynomial(rng, degree(rng));
    const PolySymbol h = random_polynomial(rng, degree(rng));
    const PolySymbol left = moyal_exact(moyal_exact(k, g, 1.0), h, 1.0);
    const PolySymbol right = moyal_exact(k, moyal_exact(g, h, 1.0), 1.0);
    const double scale = std::max(max_coefficient(left), 1e-300);
    relative = max_of(relative, PolySymbol::max_coefficient_diff(left, right) / scale);
  }
  r.seconds = timer.seconds();
  r.metrics = {{"commutator_dev", commutator_dev}, {"assoc_relative", relative}, {"tol_commutator", 1e-15},
               {"tol_assoc", 1e-12}};
  r.pass = commutator_dev <= 1e-15 && relative <= 1e-12;
  return r;
}

CheckResult check_commutator(const VerifyOptions& opts) {
  Timer timer;
  CheckResult r = started(5, "commutator");
  const PhaseGrid grid = default_grid(1.0);
  const CommutatorResult id = commutator_report(DeformationSpec::identity(), grid, StarOrder::first, opts.exec);
  const CommutatorResult sq = commutator_report(DeformationSpec::sqrt_n(), grid, StarOrder::first, opts.exec);
  const double oracle_dev = sq.report.extra("oracle_max_abs").value_or(kInf);
  r.seconds = timer.seconds();
  r.metrics = {{"identity_deviation", id.report.max_abs},
               {"sqrt_n_oracle_dev", oracle_dev},
               {"sqrt_n_target_deviation", sq.report.max_abs},
               {"tol_identity", 1e-10},
               {"tol_oracle", 1e-8}};
  r.pass = id.report.max_abs <= 1e-10 && oracle_dev <= 1e-8;
  return r;
}

CheckResult check_associativity(const VerifyOptions& opts) {
  Timer timer;
  CheckResult r = started(6, "associativity_scaling");
  const AssociativityResult res =
      associativity_defect(PolySymbol::q(), PolySymbol::p(), PolySymbol::q() + PolySymbol::p(), default_grid(1.0),
                           DeformationSpec::sqrt_n(), {1e-1, 1e-2, 1e-3}, StarOrder::first, opts.exec);
  r.seconds = timer.seconds();
  for (const DefectRow& row : res.rows) r.metrics.emplace_back("defect[" + format_double(row.hbar) + "]", row.defect);
  const double slope = res.slope.value_or(kInf);
  r.metrics.emplace_back("slope", slope);
  r.metrics.emplace_back("min_slope", 1.9);
  r.flags = {{"exact_zero", res.exact_zero}, {"runtime_within_30s", r.seconds <= 30.0}};
  r.pass = slope >= 1.9 && r.seconds <= 30.0;
  return r;
}

CheckResult check_spectrum(const VerifyOptions&) {
  Timer timer;
  CheckResult r = started(7, "spectrum_closed_form");
  const auto id = spectrum(DeformationSpec::identity(), 100, 1.0, 1.0);
  const auto sq = spectrum(DeformationSpec::sqrt_n(), 100, 1.0, 1.0);
  bool identity_exact = true;
  double sqrt_rel = 0.0;
  for (int n = 0; n <= 100; ++n) {
    const std::size_t k = static_cast<std::size_t>(n);
    identity_exact = identity_exact && id[k].energy == n + 0.5;
    const double closed = ((n + 1.0) * (n + 1.0) + double(n) * n) / 2.0;
    sqrt_rel = max_of(sqrt_rel, std::abs(sq[k].energy - closed) / closed);
  }
  r.seconds = timer.seconds();
  r.metrics = {{"sqrt_n_max_rel", sqrt_rel}, {"tol", 1e-12}};
  r.flags = {{"identity_exact", identity_exact}};
  r.pass = identity_exact && sqrt_rel <= 1e-12;
  return r;
}

CheckResult check_derivatives(const VerifyOptions& opts) {
  Timer timer;
  CheckResult r = started(8, "derivative_cross_check");
  PhaseGrid grid;
  grid.q_min = grid.p_min = -6.0;
  grid.q_max = grid.p_max = 6.0;
  grid.n_q = grid.n_p = 257;
  const Field w = fock_wigner(4, grid, opts.exec);
  const auto [fq, fp] = gradient(w, DerivativeMethod::fd4, opts.exec);
  const auto [aq, ap] = gradient(w, DerivativeMethod::analytic_radial, opts.exec);
  // Interior: skip the two outermost samples per side, where one-sided stencils apply.
  double worst = 0.0;
  for (int i = 2; i < grid.n_q - 2; ++i) {
    for (int j = 2; j < grid.n_p - 2; ++j) {
      worst = max_of(worst, std::abs(fq.at(i, j) - aq.at(i, j)));
      worst = max_of(worst, std::abs(fp.at(i, j) - ap.at(i, j)));
    }
  }
  r.seconds = timer.seconds();
  r.metrics = {{"max_abs_diff", worst}, {"tol", 1e-6}};
  r.pass = worst <= 1e-6;
  return r;
}

std::vector<CheckResult> run_core_checks(const VerifyOptions& opts) {
  return {check_moyal_genvalue(opts), check_imaginary_part(opts), check_normalization(opts),
          check_moyal_algebra(opts),  check_commutator(opts),     check_associativity(opts),
          check_spectrum(opts),       check_derivatives(opts)};
}

namespace {

void write_checks(JsonWriter& json, const std::vector<CheckResult>& checks) {
  json.begin_array();
  for (const CheckResult& c : checks) {
    json.begin_object().key("id").value(c.id).key("name").value(c.name).key("status").value(c.pass ? "pass" : "fail");
    json.key("metrics").begin_object();
    for (const auto& [k, v] : c.metrics) json.key(k).value(v);
    json.end_object().key("flags").begin_object();
    for (const auto& [k, v] : c.flags) json.key(k).value(v);
    json.end_object().end_object();
  }
  json.end_array();
}

}  // namespace

std::string checks_json(const std::vector<CheckResult>& checks) {
  JsonWriter json;
  write_checks(json, checks);
  return json.str();
}

CheckResult check_determinism(const VerifyOptions& opts, const std::vector<CheckResult>& first) {
  Timer timer;
  CheckResult r = started(9, "determinism");
  const std::vector<CheckResult> second = run_core_checks(opts);
  const bool same = checks_json(first) == checks_json(second);
  r.seconds = timer.seconds();
  r.flags = {{"byte_identical", same}};
  r.pass = same;
  return r;
}

bool VerifySummary::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifySummary run_verify(const VerifyOptions& opts) {
  VerifySummary summary;
  summary.quick = opts.quick;
  summary.checks = run_core_checks(opts);
  summary.checks.push_back(check_determinism(opts, summary.checks));
  return summary;
}

std::string summary_json(const VerifySummary& summary) {
  JsonWriter json;
  json.begin_object()
      .key("suite").value("fstar verify")
      .key("quick").value(summary.quick)
      .key("status").value(summary.pass() ? "pass" : "fail")
      .key("checks");
  write_checks(json, summary.checks);
  json.end_object();
  return json.str();
}

}  // namespace fstar

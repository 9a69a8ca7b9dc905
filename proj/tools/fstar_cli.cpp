// fstar: spectra, Wigner fields, star-genvalue residuals, commutator and
// associativity reports, and the acceptance suite.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration or parse error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fstar/deformation.hpp"
#include "fstar/errors.hpp"
#include "fstar/genvalue.hpp"
#include "fstar/io.hpp"
#include "fstar/kernels.hpp"
#include "fstar/phasespace.hpp"
#include "fstar/polysymbol.hpp"
#include "fstar/starproduct.hpp"
#include "fstar/verify.hpp"

namespace {

using namespace fstar;

/// A bad value for a specific flag.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& flag, const std::string& what) : std::runtime_error(flag + ": " + what) {}
};

struct Config {
  std::string spec_text = "identity";
  int n = 0;
  int n_max = 10;
  double hbar = 1.0;
  double omega = 1.0;
  double zeta2 = -1.0;  // < 0: Fock state
  std::string grid_text;
  std::string order_text = "first";
  std::string out = "-";
  double tol = kDefaultSeriesTol;
  bool quick = false;
  double r_cut = kDefaultRadiusCut;
  std::string k_text = "q";
  std::string g_text = "p";
  std::string h_text = "q+p";
  std::string hbars_text = "1e-1,1e-2,1e-3";
};

template <class Fn>
auto with_flag(const std::string& flag, Fn&& fn) {
  try {
    return fn();
  } catch (const fstar::ParseError& e) {
    throw ConfigError(flag, e.what());
  } catch (const fstar::Error& e) {
    throw ConfigError(flag, e.what());
  }
}

void require_finite(const std::string& flag, double v) {
  if (!std::isfinite(v)) throw ConfigError(flag, "value must be finite");
}

void require_positive(const std::string& flag, double v) {
  require_finite(flag, v);
  if (!(v > 0.0)) throw ConfigError(flag, "value must be > 0");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& flag, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(flag, "'" + text + "' is not a number");
  }
}

PhaseGrid make_grid(const Config& cfg) {
  require_positive("--hbar", cfg.hbar);
  PhaseGrid grid = default_grid(cfg.hbar);
  if (!cfg.grid_text.empty()) {
    const auto parts = split(cfg.grid_text, ',');
    if (parts.size() != 6) throw ConfigError("--grid", "expected qmin,qmax,pmin,pmax,nq,np");
    double v[6];
    for (int k = 0; k < 6; ++k) {
      v[k] = parse_number("--grid", parts[static_cast<std::size_t>(k)]);
      require_finite("--grid", v[k]);
    }
    for (int k : {4, 5}) {
      if (v[k] != std::floor(v[k]) || v[k] < 5 || v[k] > 1e5) {
        throw ConfigError("--grid", "sample counts must be integers >= 5");
      }
    }
    grid.q_min = v[0];
    grid.q_max = v[1];
    grid.p_min = v[2];
    grid.p_max = v[3];
    grid.n_q = static_cast<int>(v[4]);
    grid.n_p = static_cast<int>(v[5]);
  }
  with_flag("--grid", [&] { grid.validate(); });
  return grid;
}

DeformationSpec make_spec(const Config& cfg, int n_needed) {
  return with_flag("--spec", [&] {
    DeformationSpec spec = parse_deformation(cfg.spec_text);
    spec.validate(std::max(n_needed, 1));
    return spec;
  });
}

StarOrder make_order(const Config& cfg) {
  const StarOrder order = with_flag("--order", [&] { return parse_star_order(cfg.order_text); });
  if (order == StarOrder::exact) throw ConfigError("--order", "expected first or second");
  return order;
}

PolySymbol make_symbol_arg(const std::string& flag, const std::string& text) {
  return with_flag(flag, [&] { return parse_symbol(text); });
}

/// Writes to --out, or stdout for "-".
void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("--out", "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ConfigError("--out", "write to '" + path + "' failed");
}

int run_spectrum(const Config& cfg) {
  if (cfg.n_max < 0) throw ConfigError("--n-max", "must be >= 0");
  require_positive("--omega", cfg.omega);
  require_positive("--hbar", cfg.hbar);
  const DeformationSpec spec = make_spec(cfg, cfg.n_max + 1);
  std::ostringstream out;
  write_spectrum_csv(out, spectrum(spec, cfg.n_max, cfg.hbar, cfg.omega));
  emit(cfg.out, out.str());
  return 0;
}

int run_wigner(const Config& cfg, bool coherent) {
  const PhaseGrid grid = make_grid(cfg);
  std::ostringstream out;
  if (coherent) {
    require_positive("--zeta2", cfg.zeta2);
    require_positive("--tol", cfg.tol);
    const DeformationSpec spec = make_spec(cfg, 1);
    const WignerWeights w = with_flag("--zeta2", [&] { return wigner_weights(spec, cfg.zeta2, cfg.tol); });
    write_field_csv(out, fcs_wigner(w, grid));
  } else {
    if (cfg.n < 0) throw ConfigError("--n", "must be >= 0");
    write_field_csv(out, fock_wigner(cfg.n, grid));
  }
  emit(cfg.out, out.str());
  return 0;
}

int run_residual(const Config& cfg) {
  if (cfg.n < 0) throw ConfigError("--n", "must be >= 0");
  require_positive("--omega", cfg.omega);
  require_positive("--r-cut", cfg.r_cut);
  const PhaseGrid grid = make_grid(cfg);
  const DeformationSpec spec = make_spec(cfg, cfg.n + 1);
  const StarOrder order = make_order(cfg);
  const ResidualReport report =
      with_flag("--spec", [&] { return genvalue_residual(spec, cfg.n, grid, cfg.omega, order, cfg.r_cut); });
  emit(cfg.out, report_json(report));
  return 0;
}

int run_commutator(const Config& cfg) {
  const PhaseGrid grid = make_grid(cfg);
  const DeformationSpec spec = make_spec(cfg, 1);
  const StarOrder order = make_order(cfg);
  const CommutatorResult res = with_flag("--spec", [&] { return commutator_report(spec, grid, order); });
  if (cfg.out == "-") {
    emit("-", report_json(res.report));
    return 0;
  }
  std::ostringstream csv;
  write_field_csv(csv, res.deviation);
  emit(cfg.out, csv.str());
  emit(cfg.out + ".json", report_json(res.report));
  return 0;
}

int run_assoc(const Config& cfg) {
  const PhaseGrid grid = make_grid(cfg);
  const DeformationSpec spec = make_spec(cfg, 1);
  const StarOrder order = make_order(cfg);
  const PolySymbol k = make_symbol_arg("--k", cfg.k_text);
  const PolySymbol g = make_symbol_arg("--g", cfg.g_text);
  const PolySymbol h = make_symbol_arg("--h", cfg.h_text);
  std::vector<double> hbars;
  for (const std::string& part : split(cfg.hbars_text, ',')) {
    const double v = parse_number("--hbars", part);
    require_positive("--hbars", v);
    hbars.push_back(v);
  }
  const AssociativityResult res =
      with_flag("--hbars", [&] { return associativity_defect(k, g, h, grid, spec, hbars, order); });
  std::ostringstream out;
  write_assoc_csv(out, res);
  emit(cfg.out, out.str());
  return 0;
}

int run_verify_command(const Config& cfg) {
  VerifyOptions opts;
  opts.quick = cfg.quick;
  const VerifySummary summary = run_verify(opts);
  for (const CheckResult& c : summary.checks) {
    std::fprintf(stderr, "[%d] %-24s %s  (%.2f s)\n", c.id, c.name.c_str(), c.pass ? "pass" : "FAIL", c.seconds);
  }
  emit(cfg.out, summary_json(summary));
  return summary.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  kernels::apply_thread_cap_from_env();

  CLI::App app{"Deformed phase-space star products and Wigner functions"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help and exit");
  Config cfg;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec_text, "identity | sqrt_n | qdef:q=<real> | expr:<expression in n>");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid", cfg.grid_text, "qmin,qmax,pmin,pmax,nq,np (default -8,8,-8,8,513,513)");
    sub->add_option("--hbar", cfg.hbar, "Planck constant");
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "output path, - for stdout"); };

  auto* spectrum_cmd = app.add_subcommand("spectrum", "energies E_0..E_nmax as CSV (n,energy)");
  add_spec(spectrum_cmd);
  spectrum_cmd->add_option("--n-max", cfg.n_max, "largest level")->required();
  spectrum_cmd->add_option("--hbar", cfg.hbar, "Planck constant");
  spectrum_cmd->add_option("--omega", cfg.omega, "oscillator frequency");
  add_out(spectrum_cmd);

  auto* wigner_cmd = app.add_subcommand("wigner", "Fock (--n) or deformed coherent (--zeta2) Wigner field as CSV");
  add_spec(wigner_cmd);
  add_grid(wigner_cmd);
  auto* n_opt = wigner_cmd->add_option("--n", cfg.n, "Fock level");
  auto* zeta_opt = wigner_cmd->add_option("--zeta2", cfg.zeta2, "|zeta|^2 of the deformed coherent state");
  n_opt->excludes(zeta_opt);
  wigner_cmd->add_option("--tol", cfg.tol, "relative truncation tolerance of the coherent-state series");
  add_out(wigner_cmd);

  auto* residual_cmd = app.add_subcommand("residual", "star-genvalue residual report as JSON");
  add_spec(residual_cmd);
  add_grid(residual_cmd);
  residual_cmd->add_option("--n", cfg.n, "Fock level")->required();
  residual_cmd->add_option("--omega", cfg.omega, "oscillator frequency");
  residual_cmd->add_option("--order", cfg.order_text, "first | second");
  residual_cmd->add_option("--r-cut", cfg.r_cut, "norm region q^2+p^2 <= r_cut^2 hbar");
  add_out(residual_cmd);

  auto* commutator_cmd =
      app.add_subcommand("commutator", "deviation field CSV at --out plus report at <out>.json");
  add_spec(commutator_cmd);
  add_grid(commutator_cmd);
  commutator_cmd->add_option("--order", cfg.order_text, "first | second");
  add_out(commutator_cmd);

  auto* assoc_cmd = app.add_subcommand("assoc", "associativity defect versus hbar as CSV (hbar,defect,slope)");
  add_spec(assoc_cmd);
  assoc_cmd->add_option("--grid", cfg.grid_text, "qmin,qmax,pmin,pmax,nq,np");
  assoc_cmd->add_option("--order", cfg.order_text, "first | second");
  assoc_cmd->add_option("--k", cfg.k_text, "polynomial symbol in q, p");
  assoc_cmd->add_option("--g", cfg.g_text, "polynomial symbol in q, p");
  assoc_cmd->add_option("--h", cfg.h_text, "polynomial symbol in q, p");
  assoc_cmd->add_option("--hbars", cfg.hbars_text, "comma-separated hbar values");
  add_out(assoc_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite; summary JSON, exit 1 on failure");
  verify_cmd->add_flag("--quick", cfg.quick, "fewer cases per check");
  add_out(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (spectrum_cmd->parsed()) return run_spectrum(cfg);
    if (wigner_cmd->parsed()) return run_wigner(cfg, zeta_opt->count() > 0);
    if (residual_cmd->parsed()) return run_residual(cfg);
    if (commutator_cmd->parsed()) return run_commutator(cfg);
    if (assoc_cmd->parsed()) return run_assoc(cfg);
    if (verify_cmd->parsed()) return run_verify_command(cfg);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const fstar::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}

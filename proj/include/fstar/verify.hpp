#pragma once

// The acceptance suite behind `fstar verify`. Each check returns named metrics
// and a pass flag; the summary JSON holds no timings so that two runs of the
// same build produce identical bytes.

#include <string>
#include <utility>
#include <vector>

#include "fstar/kernels.hpp"

namespace fstar {

struct VerifyOptions {
  /// Fewer cases per check (grids and tolerances are unchanged).
  bool quick = false;
  Exec exec = Exec::parallel;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, double>> metrics;
  /// Boolean sub-checks, e.g. runtime budgets.
  std::vector<std::pair<std::string, bool>> flags;
  /// Wall time in seconds; reported on stderr only, never serialized.
  double seconds = 0.0;
};

CheckResult check_moyal_genvalue(const VerifyOptions& opts);
CheckResult check_imaginary_part(const VerifyOptions& opts);
CheckResult check_normalization(const VerifyOptions& opts);
CheckResult check_moyal_algebra(const VerifyOptions& opts);
CheckResult check_commutator(const VerifyOptions& opts);
CheckResult check_associativity(const VerifyOptions& opts);
CheckResult check_spectrum(const VerifyOptions& opts);
CheckResult check_derivatives(const VerifyOptions& opts);

/// Checks 1-8 in order.
std::vector<CheckResult> run_core_checks(const VerifyOptions& opts);

/// JSON for a list of checks (the part compared by the determinism check).
std::string checks_json(const std::vector<CheckResult>& checks);

/// Runs the core checks twice and compares their JSON byte for byte. `first`
/// is the already computed first run.
CheckResult check_determinism(const VerifyOptions& opts, const std::vector<CheckResult>& first);

struct VerifySummary {
  bool quick = false;
  std::vector<CheckResult> checks;  // 1-9
  bool pass() const;
};

VerifySummary run_verify(const VerifyOptions& opts);
std::string summary_json(const VerifySummary& summary);

}  // namespace fstar

#pragma once

#include <map>
#include <string>
#include <vector>

#include "polycalc/corpus.hpp"
#include "polycalc/grid.hpp"

namespace polycalc {

/// Harness configuration (JSON; unknown keys rejected).
struct SuiteConfig {
  std::size_t n_points = 1024;
  double t_max = 40.0;
  QuadRule rule = QuadRule::gauss_laguerre_mapped;
  int max_degree = 3;
  double L = 12.0;
  std::vector<std::size_t> nodes_per_axis = {512, 64, 32};
  std::string corpus = "full";  // or "atoms_only"
  std::map<std::string, double> tolerance_overrides;
  std::string out_dir;
  std::string calc_json;  // raw JSON of the optional calc block
};

SuiteConfig suite_config_from_file(const std::string& path);
SuiteConfig suite_config_from_json_text(const std::string& text);
std::string config_canonical_text(const SuiteConfig& cfg);
std::string config_hash(const SuiteConfig& cfg);

enum class CheckStatus { pass, fail, skipped };

struct CheckResult {
  std::string name;
  std::string law;  // the identity this check certifies
  int criterion = 0;  // acceptance criterion 1..10; 0 = module invariant
  double max_error = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::pass;
  double wall_ms = 0.0;
};

struct SuiteReport {
  std::string config_digest;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  int count(CheckStatus s) const;
};

/// Execute every invariant and acceptance check on the configured corpus.
/// Deterministic for a fixed config in serial mode.
SuiteReport run_suite(const SuiteConfig& cfg);

/// report.csv + summary.json are deterministic; wall times go to a separate
/// timings.csv outside the determinism contract.
void write_report(const SuiteReport& rep, const std::string& out_dir);

/// Time-sliced Gaussian semigroup artifacts plus the norm trace and the
/// calculus output state.
void run_gaussian_demo(const SuiteConfig& cfg, const std::string& out_dir);

/// Evaluate the configured (F, p, A, y) quadruple; writes the result state.
void run_calc(const SuiteConfig& cfg, const std::string& out_dir);

/// The CLI entry (wrapped by tools/polycalc.cpp; exposed for tests).
/// Exit codes: 0 all executed checks pass, 1 failures, 2 config errors,
/// 3 output collision without --force.
int run_cli(const std::vector<std::string>& args);

}  // namespace polycalc

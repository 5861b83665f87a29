#pragma once

// Scenario runner: configures subsystem pairs, sweeps time grids and
// parameters, and emits entropy time series as CSV or JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptq/bipartite.hpp"

namespace ptq {

enum class Scenario { PtPtRight, PtPtLeft, PtSqmEvolvePt, PtSqmEvolveSqm, BrokenDemo };
enum class OutputFormat { Csv, Json };
enum class SweepAxis { Gamma1, Zeta1, Gamma2, Zeta2 };

Scenario scenario_from_name(const std::string& name);
const char* to_string(Scenario s);
SweepAxis axis_from_name(const std::string& name);
const char* to_string(SweepAxis a);

struct ScenarioConfig {
  Scenario scenario = Scenario::PtPtRight;
  PTParams params1{3.0, 5.0};
  PTParams params2{1.0, 2.0};  // ignored when the right side is Standard
  std::optional<BipartiteState::Coeffs> coeffs;
  std::optional<std::uint64_t> seed;
  double t_start = 0.0;
  double t_end = 10.0;
  int steps = 101;
  double tolerance = 1e-11;
  OutputFormat format = OutputFormat::Csv;

  void validate() const;  // throws ContractError on bad fields
};

struct EntropySample {
  double t;
  double omega_plus;
  double omega_minus;
  double entropy_bits;
};

struct RunReport {
  ScenarioConfig config;
  BipartiteState::Coeffs coeffs_used{};  // after any seeded draw + normalization
  std::vector<EntropySample> samples;
  double e_initial = 0.0;
  double max_deviation = 0.0;
  bool pass = false;
  PhaseClass phase_left = PhaseClass::Unbroken;
  PhaseClass phase_right = PhaseClass::Unbroken;
  bool non_unitary = false;
  double norm_drift = 0.0;  // broken_demo: |coeff norm - 1| at t = 1/|Im lambda|
  bool skipped = false;     // sweep point outside the unbroken phase
  std::string skip_reason;
};

// Deterministic coefficient draw: four standard complex Gaussians
// normalized to unit Frobenius norm.
BipartiteState::Coeffs random_coeffs(std::uint64_t seed);

// The three-step procedure: initial entropy, time-grid evolution with
// the dual-representation cross-check, and the invariance verdict.
RunReport run_scenario(const ScenarioConfig& config);

// One report per axis value; points outside the unbroken phase are
// marked skipped. Throws ConsistencyError if the reduced spectrum
// varies across the sweep (it must not, for fixed coefficients).
std::vector<RunReport> sweep(const ScenarioConfig& base, SweepAxis axis,
                             const std::vector<double>& values);

std::string emit_csv(const RunReport& report);
std::string emit_json(const RunReport& report);
RunReport parse_json_report(const std::string& text);
std::string emit_report(const RunReport& report);  // per report.config.format

// Shared by the CLI: merge a JSON config document (flag field names)
// into a ScenarioConfig.
ScenarioConfig config_from_json(const std::string& text);

}  // namespace ptq

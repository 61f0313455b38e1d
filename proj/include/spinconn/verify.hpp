#pragma once

// Run configuration, the registered verification checks, and report
// serialization.  Everything here is deterministic: the same config
// produces byte-identical JSON output.

#include "spinconn/covariant.hpp"
#include "spinconn/curvature.hpp"

namespace spinconn {

struct GaugeConfig {
  bool enabled = false;
  std::uint64_t seed = 7;
  int degree = 2;
  double amplitude = 0.25;
};

struct PointSampling {
  int count = 20;
  std::uint64_t seed = 1;
  Box box{};
  bool box_set = false;
};

struct OutputConfig {
  std::string json_path;
  bool pretty = false;
};

// Optional fault injection for exercising the failure path: adds `amount`
// to one gamma component of the spinor data before running the checks.
struct DefectConfig {
  bool enabled = false;
  int k = 0, a = 0, b = 0;
  double amount = 1e-3;
};

struct RunConfig {
  std::string spacetime = "minkowski";
  ModelParams params;
  std::string frame = "tetrad";
  std::array<Poly, 16> custom_frame_entries{};
  GaugeConfig gauge;
  PointSampling points;
  DerivativeScheme scheme;
  SpinVariant variant = SpinVariant::decorated;
  std::map<std::string, double> tolerances;
  OutputConfig output;
  DefectConfig defect;
};

// Parses the documented JSON config schema; throws ConfigError on unknown
// keys, wrong types, or out-of-range values.
RunConfig parse_config(const std::string& json_text);

// Tolerance defaults for every registered check name; ConfigError on an
// unknown name when overriding.
const std::map<std::string, double>& default_tolerances();

struct CheckResult {
  std::string name;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = true;
  bool skipped = false;
  Vec4 worst_point{};
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::string config_echo;
  std::string version;
  bool all_pass = true;
  // Set when the run aborted early (for example a stencil left the chart
  // domain); the report then covers only the points visited before that.
  std::string error;
};

VerificationReport run_verify(const RunConfig& config);

// Pairwise max deviations between the spin-connection formulas over the
// sampled points.  The short constant-data formula is marked inapplicable
// when the spinor data varies over the chart.
struct CompareTable {
  std::array<std::string, 4> labels{};
  double dev[4][4] = {};
  std::array<bool, 4> applicable{};
  double tolerance = 0;
  bool all_pass = true;
};

CompareTable run_compare(const RunConfig& config);

/// Tensor dump at one point: `what` selects connection, curvature, or
// algebra output.
std::string run_inspect(const RunConfig& config, const SpacetimePoint& point,
                        const std::string& what, bool json);

std::string report_to_json(const VerificationReport& report);
std::string report_to_pretty(const VerificationReport& report,
                             double wall_seconds);
std::string compare_to_json(const CompareTable& table);
std::string compare_to_pretty(const CompareTable& table, double wall_seconds);

}  // namespace spinconn

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinconn/verify.hpp"

namespace {

using spinconn::RunConfig;

struct CommonOpts {
  std::string config_path;
  std::string spacetime;
  double rs = 0.0;
  bool rs_set = false;
  int points = 0;
  long long seed = -1;
  double step = 0.0;
  std::vector<std::string> tol_overrides;
  std::string format = "pretty";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path,
                  "JSON run configuration file");
  cmd->add_option("--spacetime", opts.spacetime,
                  "spacetime model name (overrides config)");
  cmd->add_option("--rs", opts.rs, "schwarzschild radius parameter")
      ->each([&opts](const std::string&) { opts.rs_set = true; });
  cmd->add_option("--points", opts.points, "number of sample points")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts.seed, "point sampling seed")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--step", opts.step, "finite difference base step")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", opts.tol_overrides,
                  "tolerance override, <check>=<value> (repeatable)");
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"json", "pretty"}));
}

RunConfig load_config(const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in)
      throw spinconn::ConfigError("config: cannot open file '" +
                                  opts.config_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    cfg = spinconn::parse_config(buf.str());
  }
  if (!opts.spacetime.empty()) cfg.spacetime = opts.spacetime;
  if (opts.rs_set) cfg.params.scalars["rs"] = opts.rs;
  if (opts.points > 0) cfg.points.count = opts.points;
  if (opts.seed >= 0) cfg.points.seed = static_cast<std::uint64_t>(opts.seed);
  if (opts.step > 0.0) cfg.scheme.step = opts.step;
  for (const std::string& ov : opts.tol_overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == ov.size())
      throw spinconn::ConfigError("config: --tol expects <check>=<value>, got '" +
                                  ov + "'");
    const std::string name = ov.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(ov.substr(eq + 1), &used);
      if (used != ov.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw spinconn::ConfigError("config: --tol value for '" + name +
                                  "' is not a number");
    }
    if (!(value > 0.0))
      throw spinconn::ConfigError("config: tolerance for '" + name +
                                  "' must be positive");
    if (spinconn::default_tolerances().find(name) ==
        spinconn::default_tolerances().end())
      throw spinconn::ConfigError("config: unknown check name in --tol: '" +
                                  name + "'");
    cfg.tolerances[name] = value;
  }
  return cfg;
}

void write_json_file_if_requested(const RunConfig& cfg,
                                  const std::string& json_text) {
  if (cfg.output.json_path.empty()) return;
  std::ofstream out(cfg.output.json_path);
  if (!out)
    throw spinconn::ConfigError("config: cannot write output file '" +
                                cfg.output.json_path + "'");
  out << json_text << "\n";
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Metric-compatible connections and curvature in the bundle of Dirac "
      "spinors over curved spacetime"};
  app.require_subcommand(1);

  CommonOpts verify_opts;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the identity checks over sampled points");
  add_common(verify_cmd, verify_opts);

  CommonOpts compare_opts;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "tabulate pairwise deviations between connection formulas");
  add_common(compare_cmd, compare_opts);

  CommonOpts inspect_opts;
  std::vector<double> inspect_point;
  std::string inspect_what = "connection";
  CLI::App* inspect_cmd =
      app.add_subcommand("inspect", "dump tensors at a single point");
  add_common(inspect_cmd, inspect_opts);
  inspect_cmd
      ->add_option("--point", inspect_point,
                   "point coordinates x0,x1,x2,x3")
      ->delimiter(',')
      ->expected(4)
      ->required();
  inspect_cmd
      ->add_option("--what", inspect_what,
                   "which tensors to dump")
      ->check(CLI::IsMember({"connection", "curvature", "algebra"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*verify_cmd) {
      const RunConfig cfg = load_config(verify_opts);
      const spinconn::VerificationReport rep = spinconn::run_verify(cfg);
      const std::string json_text = spinconn::report_to_json(rep);
      write_json_file_if_requested(cfg, json_text);
      if (verify_opts.format == "json")
        std::cout << json_text << "\n";
      else
        std::cout << spinconn::report_to_pretty(rep, elapsed_since(start));
      if (!rep.error.empty()) return 2;
      return rep.all_pass ? 0 : 1;
    }
    if (*compare_cmd) {
      const RunConfig cfg = load_config(compare_opts);
      const spinconn::CompareTable table = spinconn::run_compare(cfg);
      const std::string json_text = spinconn::compare_to_json(table);
      write_json_file_if_requested(cfg, json_text);
      if (compare_opts.format == "json")
        std::cout << json_text << "\n";
      else
        std::cout << spinconn::compare_to_pretty(table, elapsed_since(start));
      return table.all_pass ? 0 : 1;
    }
    if (*inspect_cmd) {
      const RunConfig cfg = load_config(inspect_opts);
      spinconn::SpacetimePoint p;
      for (int k = 0; k < 4; ++k) p.x[k] = inspect_point[k];
      const bool json_mode = inspect_opts.format == "json";
      const std::string out = spinconn::run_inspect(cfg, p, inspect_what,
                                                    json_mode);
      write_json_file_if_requested(
          cfg, json_mode ? out
                         : spinconn::run_inspect(cfg, p, inspect_what, true));
      std::cout << out;
      if (json_mode) std::cout << "\n";
      if (inspect_what == "curvature" &&
          (out.find("\"pass\":false") != std::string::npos ||
           out.find(" FAIL") != std::string::npos))
        return 1;
      return 0;
    }
  } catch (const spinconn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "greenpc/hierarchy.hpp"

namespace greenpc {

/// Scenario description parsed from a flat `key = value` text file
/// (UTF-8, `#` comments, optional [section] grouping lines, unknown keys
/// rejected). `r` and `c` are mutually exclusive; r is converted to
/// c = 2^r - 1 on load.
struct ExperimentConfig {
  std::string name = "scenario";
  NetworkConfig network;
  EfficiencyFunction efficiency = EfficiencyFunction::exponential_outage(1.0);

  std::optional<int> leaders;            // leader count for `equilibrium`
  double kappa = 0.5;

  std::string sweep_variable = "K";      // load-sweep
  double sweep_from = 0, sweep_to = 0, sweep_step = 1;
  std::vector<double> alpha_list{0.0, 0.05, 0.10, 0.15};

  int lambda_points = 11;                // sensing-2x2 segment resolution

  std::string algorithm = "br";          // learn: br | fp
  std::string init_profile = "random";   // e.g. "S,NS" or "random"
  int horizon = 1000;
  int max_steps = 1000;
  double fp_prior = 0.5;

  int power_grid_points = 200;           // hybrid
  double power_grid_min = 0.0;           // 0 = derive from the one-shot power
  double power_grid_max = 0.0;

  std::string out_path;                  // empty = stdout
  std::uint64_t seed = 0;

  std::uint64_t config_hash = 0;         // FNV-1a of the file contents
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

/// Subcommand engines; each writes one CSV document to `os`.
void run_equilibrium(const ExperimentConfig& cfg, std::ostream& os);
void run_welfare_sweep(const ExperimentConfig& cfg, std::ostream& os);
void run_role_gain(const ExperimentConfig& cfg, std::ostream& os);
void run_sensing_2x2(const ExperimentConfig& cfg, std::ostream& os);
void run_load_sweep(const ExperimentConfig& cfg, std::ostream& os);
void run_learn(const ExperimentConfig& cfg, std::ostream& os);
void run_hybrid(const ExperimentConfig& cfg, std::ostream& os);

} // namespace greenpc

// Equilibrium calculator for energy-efficient power control with sensing.
//
// Subcommands consume a flat key = value scenario file and emit CSV figure
// data. Exit codes: 0 ok, 2 config error, 3 infeasible model, 4 numeric
// failure.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "greenpc/errors.hpp"
#include "greenpc/experiment.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool quiet = false;
};

int run(const CommonOpts& opts,
        const std::function<void(const greenpc::ExperimentConfig&, std::ostream&)>& engine) {
  try {
    greenpc::ExperimentConfig cfg = greenpc::load_experiment_config(opts.config_path);
    if (opts.seed_set) cfg.seed = opts.seed;
    if (!opts.out_path.empty()) cfg.out_path = opts.out_path;

    std::ostringstream buf;
    engine(cfg, buf);
    if (cfg.out_path.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream out(cfg.out_path, std::ios::binary);
      if (!out) throw greenpc::ConfigError("cannot open output file '" + cfg.out_path + "'");
      out << buf.str();
      if (!opts.quiet) std::cerr << "wrote " << cfg.out_path << "\n";
    }
    return 0;
  } catch (const greenpc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const greenpc::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const greenpc::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 4;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-efficient power control: equilibria, welfare sweeps, sensing game"};
  app.require_subcommand(1);

  CommonOpts opts;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "scenario file (key = value)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_path, "output CSV path (default: stdout)");
    sub->add_option("--seed", opts.seed, "random seed override")
        ->each([&](const std::string&) { opts.seed_set = true; });
    sub->add_flag("--quiet", opts.quiet, "suppress informational messages");
  };

  struct Sub {
    const char* name;
    const char* help;
    void (*engine)(const greenpc::ExperimentConfig&, std::ostream&);
  };
  const Sub subs[] = {
      {"equilibrium", "one-shot or two-level equilibrium report for a fixed partition",
       &greenpc::run_equilibrium},
      {"welfare-sweep", "sum utility and total power for every leader count",
       &greenpc::run_welfare_sweep},
      {"role-gain", "per-role utility gain vs the one-shot outcome for every leader count",
       &greenpc::run_role_gain},
      {"sensing-2x2", "payoff table, equilibrium census and bargaining point (K = 2)",
       &greenpc::run_sensing_2x2},
      {"load-sweep", "maximal welfare gain vs system load for a list of sensing costs",
       &greenpc::run_load_sweep},
      {"learn", "better-reply or fictitious-play trace on the sensing game",
       &greenpc::run_learn},
      {"hybrid", "joint sense-and-power game check on a discretized power grid",
       &greenpc::run_hybrid},
  };
  for (const auto& s : subs) add_common(app.add_subcommand(s.name, s.help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e); // prints the diagnostic; command-line problems are config errors
    return 2;
  }

  for (const auto& s : subs)
    if (app.got_subcommand(s.name)) return run(opts, s.engine);
  return 2;
}

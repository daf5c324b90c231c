// Command-line front end: simulate, compare, optimize, bandwidth.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "packsched/experiment.hpp"

namespace {

using packsched::ExperimentConfig;
using packsched::ExperimentOverrides;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> schedulers;
  std::vector<std::uint64_t> seeds;
  std::string out_dir;
  std::string format;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment JSON file")
      ->required();
  cmd->add_option("--scheduler", args.schedulers,
                  "scheduler kinds to run (repeatable; overrides config)");
  cmd->add_option("--seed", args.seeds,
                  "seeds to run (repeatable; overrides config)");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--format", args.format, "summary format: csv or json");
}

// Loads the file, layers the command-line overrides on top, and hands
// the resolved config to `run`.
int dispatch(const CommonArgs& args, int (*run)(const ExperimentConfig&)) {
  ExperimentConfig config;
  try {
    config = packsched::load_experiment_config(args.config_path);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  ExperimentOverrides overrides;
  overrides.seeds = args.seeds;
  try {
    for (const std::string& name : args.schedulers) {
      overrides.schedulers.push_back(
          packsched::scheduler_kind_from_name(name));
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  if (!args.out_dir.empty()) {
    overrides.out_dir = args.out_dir;
  }
  if (!args.format.empty()) {
    overrides.format = args.format;
  }
  packsched::apply_overrides(config, overrides);
  return run(config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic packet-scheduling laboratory"};
  app.require_subcommand(1);

  CommonArgs simulate_args;
  CLI::App* simulate =
      app.add_subcommand("simulate", "run schedulers and write traces");
  add_common(simulate, simulate_args);

  CommonArgs compare_args;
  CLI::App* compare = app.add_subcommand(
      "compare", "run schedulers on one shared arrival stream");
  add_common(compare, compare_args);

  CommonArgs bandwidth_args;
  CLI::App* bandwidth = app.add_subcommand(
      "bandwidth", "run flow workloads and write per-flow throughput");
  add_common(bandwidth, bandwidth_args);

  packsched::OptimizeRequest optimize_request;
  std::string objective = "drop";
  CLI::App* optimize =
      app.add_subcommand("optimize", "batch admission and bound analysis");
  optimize->add_option("--dist", optimize_request.dist_path,
                       "rank histogram JSON file")
      ->required();
  optimize->add_option("--capacities", optimize_request.capacities,
                       "per-queue capacities");
  optimize->add_option("--queues", optimize_request.queue_count,
                       "queue count (sched objective without capacities)");
  optimize->add_option("--objective", objective, "drop or sched")
      ->check(CLI::IsMember({"drop", "sched"}));
  optimize->add_option("--out", optimize_request.out_dir,
                       "also write the report under this directory");
  optimize->add_option("--format", optimize_request.format,
                       "report format: csv or json");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    return dispatch(simulate_args, packsched::cmd_simulate);
  }
  if (compare->parsed()) {
    return dispatch(compare_args, packsched::cmd_compare);
  }
  if (bandwidth->parsed()) {
    return dispatch(bandwidth_args, packsched::cmd_bandwidth);
  }
  if (optimize->parsed()) {
    optimize_request.objective = objective == "sched"
                                     ? packsched::BoundObjective::Sched
                                     : packsched::BoundObjective::Drop;
    return packsched::cmd_optimize(optimize_request);
  }
  return 1;
}

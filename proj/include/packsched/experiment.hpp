// Experiment orchestration behind the command-line tool: load a JSON
// experiment description, run the requested scenarios, and write traces
// and metric files.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "packsched/model.hpp"
#include "packsched/optimizer.hpp"
#include "packsched/scheduler.hpp"

namespace packsched {

struct ExperimentConfig {
  std::vector<SchedulerKind> schedulers;
  std::vector<std::uint64_t> seeds;  // defaults to 1..5
  SchedulerConfig scheduler;
  WorkloadSpec workload;
  SchedulerOptions options;
  std::string out_dir = "results";
  std::string format = "csv";  // csv | json (summary files)
  std::int64_t bucket_ticks = 1000;
};

// Parses the JSON experiment file. Throws std::runtime_error with a
// usable message on malformed input; does not validate semantics (see
// validate_experiment).
ExperimentConfig load_experiment_config(const std::string& path);

// Config plus workload validation; empty result means runnable.
std::vector<std::string> validate_experiment(const ExperimentConfig& config);

// Command-line override set applied on top of the file.
struct ExperimentOverrides {
  std::vector<std::uint64_t> seeds;
  std::vector<SchedulerKind> schedulers;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
};

void apply_overrides(ExperimentConfig& config,
                     const ExperimentOverrides& overrides);

// Subcommands. Each returns a process exit code; on failure they report
// to stderr and remove any files written during the failed invocation.
// cmd_simulate: per (scheduler, seed) run -> trace + rank table + summary.
// cmd_compare: per seed, all schedulers on one shared arrival stream ->
//   per-run rank tables plus a side-by-side summary table (with the
//   forwarded-set divergence against the ideal buffer when it ran).
// cmd_bandwidth: flow workloads -> per-flow throughput series per run.
int cmd_simulate(const ExperimentConfig& config);
int cmd_compare(const ExperimentConfig& config);
int cmd_bandwidth(const ExperimentConfig& config);

// Batch analysis. Reads a rank histogram (JSON: explicit counts or a
// named distribution with a total mass), optionally trims it to the
// aggregate capacity, and reports the admission cut, optimized bounds
// for the chosen objective, objective values and per-queue loads.
// Writes the report to stdout, and to <out>/optimize.<format> when
// `write_files` is set.
struct OptimizeRequest {
  std::string dist_path;
  std::vector<std::int64_t> capacities;  // may be empty for objective sched
  int queue_count = 0;                   // used when capacities is empty
  BoundObjective objective = BoundObjective::Drop;
  std::string out_dir;  // empty: stdout only
  std::string format = "csv";
};

int cmd_optimize(const OptimizeRequest& request);

}  // namespace packsched

#include "packsched/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "packsched/distribution.hpp"
#include "packsched/metrics.hpp"
#include "packsched/simulator.hpp"
#include "packsched/trace_io.hpp"

namespace packsched {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

DistSpec parse_dist_spec(const json& j) {
  DistSpec spec;
  if (j.is_string()) {
    spec.kind = dist_kind_from_name(j.get<std::string>());
    return spec;
  }
  if (!j.is_object()) {
    throw std::runtime_error("distribution must be a name or an object");
  }
  spec.kind = dist_kind_from_name(j.value("kind", std::string("uniform")));
  spec.tau = j.value("tau", spec.tau);
  spec.lambda = j.value("lambda", spec.lambda);
  if (j.contains("counts")) {
    for (const auto& [key, value] : j.at("counts").items()) {
      spec.counts[std::stoi(key)] = value.get<double>();
    }
  }
  return spec;
}

WorkloadSpec parse_workload(const json& j) {
  WorkloadSpec spec;
  if (j.contains("distribution")) {
    spec.distribution = parse_dist_spec(j.at("distribution"));
  }
  spec.arrival_period = j.value("arrival_period", spec.arrival_period);
  spec.departure_period = j.value("departure_period", spec.departure_period);
  spec.total_arrivals = j.value("total_arrivals", spec.total_arrivals);
  if (j.contains("flows")) {
    for (const json& f : j.at("flows")) {
      FlowSpec flow;
      flow.flow_id = f.value("id", 0);
      flow.rank = f.value("rank", 0);
      flow.start_tick = f.value("start", std::int64_t{0});
      flow.stop_tick = f.value("stop", std::int64_t{0});
      flow.arrival_period = f.value("period", std::int64_t{1});
      spec.flows.push_back(flow);
    }
  }
  return spec;
}

// Writes through a temp-free protocol: remember everything created so a
// failed run can clean up after itself.
class OutputSet {
 public:
  std::ofstream open(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
      throw std::runtime_error("cannot write " + path.string());
    }
    written_.push_back(path);
    return out;
  }

  void discard_all() {
    for (const fs::path& path : written_) {
      std::error_code ec;
      fs::remove(path, ec);
    }
    written_.clear();
  }

 private:
  std::vector<fs::path> written_;
};

std::string run_basename(SchedulerKind kind, std::uint64_t seed) {
  std::ostringstream name;
  name << scheduler_kind_name(kind) << "_seed" << seed;
  return name.str();
}

int fail_config(const std::vector<std::string>& problems) {
  for (const std::string& p : problems) {
    std::cerr << "config error: " << p << "\n";
  }
  return 1;
}

void write_run_outputs(OutputSet& outputs, const fs::path& dir,
                       const Trace& trace, const std::string& format,
                       std::optional<double> delta) {
  const std::string base = run_basename(trace.scheduler, trace.seed);
  {
    std::ofstream out = outputs.open(dir / (base + ".trace"));
    write_trace(out, trace);
  }
  {
    std::ofstream out = outputs.open(dir / (base + "_ranks.csv"));
    write_rank_table(out, trace, per_rank_table(trace));
  }
  {
    const std::string ext = format == "json" ? ".json" : ".csv";
    std::ofstream out = outputs.open(dir / (base + "_summary" + ext));
    write_summary(out, trace, summarize(trace), delta, format);
  }
}

void require_sound_trace(const Trace& trace) {
  const std::vector<std::string> problems = validate_trace(trace);
  if (!problems.empty()) {
    throw std::runtime_error("trace failed conservation checks: " +
                             problems.front());
  }
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config file: " + path);
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config parse error: " + std::string(e.what()));
  }
  try {
    ExperimentConfig config;
    if (j.contains("schedulers")) {
      for (const json& s : j.at("schedulers")) {
        config.schedulers.push_back(
            scheduler_kind_from_name(s.get<std::string>()));
      }
    } else {
      config.schedulers = {SchedulerKind::Pifo, SchedulerKind::Packs,
                           SchedulerKind::SpPifo, SchedulerKind::Aifo,
                           SchedulerKind::Fifo};
    }
    if (j.contains("seeds")) {
      for (const json& s : j.at("seeds")) {
        config.seeds.push_back(s.get<std::uint64_t>());
      }
    } else {
      config.seeds = {1, 2, 3, 4, 5};
    }

    SchedulerConfig& sc = config.scheduler;
    sc.queue_count = j.value("queues", sc.queue_count);
    if (j.contains("capacities")) {
      sc.capacities = j.at("capacities").get<std::vector<std::int64_t>>();
      sc.queue_count = static_cast<int>(sc.capacities.size());
    } else {
      const std::int64_t per_queue = j.value("queue_capacity", std::int64_t{1});
      sc.capacities.assign(sc.queue_count, per_queue);
    }
    sc.window_size = j.value("window_size", sc.window_size);
    sc.burstiness = j.value("burstiness", sc.burstiness);
    sc.max_rank = j.value("max_rank", sc.max_rank);

    if (j.contains("workload")) {
      config.workload = parse_workload(j.at("workload"));
    }

    if (j.contains("sppifo")) {
      const json& sp = j.at("sppifo");
      config.options.sppifo_adaptive =
          sp.value("mode", std::string("adaptive")) != "static";
      if (sp.contains("bounds")) {
        config.options.sppifo_bounds =
            sp.at("bounds").get<std::vector<std::int64_t>>();
      }
    }
    if (j.contains("aifo_fixed_threshold")) {
      config.options.aifo_fixed_threshold =
          j.at("aifo_fixed_threshold").get<int>();
    }
    config.options.window_include_dropped =
        j.value("window_include_dropped", true);

    config.out_dir = j.value("out_dir", config.out_dir);
    config.format = j.value("format", config.format);
    config.bucket_ticks = j.value("bucket_ticks", config.bucket_ticks);
    return config;
  } catch (const std::exception& e) {
    throw std::runtime_error("config field error: " + std::string(e.what()));
  }
}

std::vector<std::string> validate_experiment(const ExperimentConfig& config) {
  std::vector<std::string> problems = validate_config(config.scheduler);
  const std::vector<std::string> wl = validate_workload(config.workload);
  problems.insert(problems.end(), wl.begin(), wl.end());
  if (config.schedulers.empty()) {
    problems.push_back("no schedulers requested");
  }
  if (config.seeds.empty()) {
    problems.push_back("no seeds requested");
  }
  if (config.format != "csv" && config.format != "json") {
    problems.push_back("format must be csv or json");
  }
  if (config.bucket_ticks < 1) {
    problems.push_back("bucket_ticks must be positive");
  }
  return problems;
}

void apply_overrides(ExperimentConfig& config,
                     const ExperimentOverrides& overrides) {
  if (!overrides.seeds.empty()) {
    config.seeds = overrides.seeds;
  }
  if (!overrides.schedulers.empty()) {
    config.schedulers = overrides.schedulers;
  }
  if (overrides.out_dir) {
    config.out_dir = *overrides.out_dir;
  }
  if (overrides.format) {
    config.format = *overrides.format;
  }
}

int cmd_simulate(const ExperimentConfig& config) {
  const std::vector<std::string> problems = validate_experiment(config);
  if (!problems.empty()) {
    return fail_config(problems);
  }
  const fs::path dir(config.out_dir);
  OutputSet outputs;
  try {
    fs::create_directories(dir);
    for (SchedulerKind kind : config.schedulers) {
      for (std::uint64_t seed : config.seeds) {
        const Trace trace = run_scenario(config.scheduler, config.workload,
                                         kind, seed, config.options);
        require_sound_trace(trace);
        write_run_outputs(outputs, dir, trace, config.format, std::nullopt);
      }
    }
  } catch (const std::exception& e) {
    outputs.discard_all();
    std::cerr << "simulate failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_compare(const ExperimentConfig& config) {
  const std::vector<std::string> problems = validate_experiment(config);
  if (!problems.empty()) {
    return fail_config(problems);
  }
  const fs::path dir(config.out_dir);
  OutputSet outputs;
  try {
    fs::create_directories(dir);
    for (std::uint64_t seed : config.seeds) {
      const std::map<SchedulerKind, Trace> traces = run_comparison(
          config.scheduler, config.workload, config.schedulers, seed,
          config.options);
      const Trace* pifo = nullptr;
      auto it = traces.find(SchedulerKind::Pifo);
      if (it != traces.end()) {
        pifo = &it->second;
      }
      std::ostringstream joined;
      joined << "scheduler,seed,arrived,forwarded,dropped,inversions,"
                "min_dropped_rank,delta_vs_pifo\n";
      for (SchedulerKind kind : config.schedulers) {
        const Trace& trace = traces.at(kind);
        require_sound_trace(trace);
        {
          std::ofstream out = outputs.open(
              dir / (run_basename(kind, seed) + "_ranks.csv"));
          write_rank_table(out, trace, per_rank_table(trace));
        }
        const TraceSummary summary = summarize(trace);
        std::optional<double> delta;
        if (pifo != nullptr) {
          std::int64_t last_tick = 0;
          for (const SimEvent& ev : trace.events) {
            last_tick = std::max(last_tick, ev.tick);
          }
          for (const SimEvent& ev : pifo->events) {
            last_tick = std::max(last_tick, ev.tick);
          }
          delta = delta_vs(trace, *pifo, last_tick);
        }
        joined << scheduler_kind_name(kind) << ',' << seed << ','
               << summary.arrived << ',' << summary.forwarded << ','
               << summary.dropped << ',' << summary.inversions << ',';
        if (summary.min_dropped_rank) {
          joined << *summary.min_dropped_rank;
        }
        joined << ',';
        if (delta) {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.6f", *delta);
          joined << buf;
        }
        joined << '\n';
      }
      std::ofstream out =
          outputs.open(dir / ("compare_seed" + std::to_string(seed) + ".csv"));
      out << joined.str();
    }
  } catch (const std::exception& e) {
    outputs.discard_all();
    std::cerr << "compare failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_bandwidth(const ExperimentConfig& config) {
  std::vector<std::string> problems = validate_experiment(config);
  if (config.workload.flows.empty()) {
    problems.push_back("bandwidth needs a workload with flows");
  }
  if (!problems.empty()) {
    return fail_config(problems);
  }
  const fs::path dir(config.out_dir);
  OutputSet outputs;
  try {
    fs::create_directories(dir);
    for (SchedulerKind kind : config.schedulers) {
      for (std::uint64_t seed : config.seeds) {
        const Trace trace = run_scenario(config.scheduler, config.workload,
                                         kind, seed, config.options);
        require_sound_trace(trace);
        const auto series = flow_throughput(trace, config.bucket_ticks);
        std::ofstream out = outputs.open(
            dir / (run_basename(kind, seed) + "_flows.csv"));
        const std::string desc = canonical_run_description(
            trace.config, trace.workload, trace.options, kind, seed);
        out << "# scheduler=" << scheduler_kind_name(kind) << " seed=" << seed
            << " config=" << to_hex(fnv1a64(desc)) << "\n";
        out << "bucket_start";
        for (const auto& [flow, counts] : series) {
          out << ",flow_" << flow;
        }
        out << "\n";
        std::size_t buckets = 0;
        for (const auto& [flow, counts] : series) {
          buckets = std::max(buckets, counts.size());
        }
        for (std::size_t b = 0; b < buckets; ++b) {
          out << b * config.bucket_ticks;
          for (const auto& [flow, counts] : series) {
            out << ',' << (b < counts.size() ? counts[b] : 0);
          }
          out << "\n";
        }
      }
    }
  } catch (const std::exception& e) {
    outputs.discard_all();
    std::cerr << "bandwidth failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_optimize(const OptimizeRequest& request) {
  json j;
  {
    std::ifstream in(request.dist_path);
    if (!in) {
      std::cerr << "optimize failed: cannot read " << request.dist_path
                << "\n";
      return 1;
    }
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      std::cerr << "optimize failed: " << e.what() << "\n";
      return 1;
    }
  }

  try {
    // The histogram file either lists counts directly or names a
    // distribution shape plus the batch size it stands for.
    std::vector<double> counts;
    if (j.contains("counts")) {
      int top = 0;
      for (const auto& [key, value] : j.at("counts").items()) {
        top = std::max(top, std::stoi(key));
      }
      top = std::max(top, j.value("max_rank", 0));
      counts.assign(top + 1, 0.0);
      for (const auto& [key, value] : j.at("counts").items()) {
        counts[std::stoi(key)] += value.get<double>();
      }
    } else {
      const DistSpec spec = parse_dist_spec(j);
      const int max_rank = j.value("max_rank", 100);
      const double total_mass = j.value("total_mass", 1.0);
      const RankDistribution dist = make_distribution(spec, max_rank);
      counts.resize(max_rank + 1);
      for (int r = 0; r <= max_rank; ++r) {
        counts[r] = dist.mass(r) * total_mass;
      }
    }

    double total_mass = 0.0;
    for (double c : counts) {
      total_mass += c;
    }

    std::optional<int> r_drop;
    std::optional<double> boundary_admitted;
    if (!request.capacities.empty()) {
      double capacity = 0.0;
      for (std::int64_t c : request.capacities) {
        capacity += static_cast<double>(c);
      }
      const CountAdmission admission = admit_counts(counts, capacity);
      r_drop = admission.r_drop;
      if (admission.boundary_admitted > 0.0) {
        boundary_admitted = admission.boundary_admitted;
      }
      counts = admission.admitted_counts;
      total_mass = 0.0;
      for (double c : counts) {
        total_mass += c;
      }
    }

    const RankDistribution dist = RankDistribution::from_counts(counts);
    BoundVector bounds;
    if (request.objective == BoundObjective::Sched) {
      const int n = request.capacities.empty()
                        ? request.queue_count
                        : static_cast<int>(request.capacities.size());
      if (n < 1) {
        std::cerr << "optimize failed: need capacities or a queue count\n";
        return 1;
      }
      bounds = optimal_bounds_sched(dist, n);
    } else {
      if (request.capacities.empty()) {
        std::cerr << "optimize failed: drop objective needs capacities\n";
        return 1;
      }
      bounds = optimal_bounds_drop(dist, request.capacities, total_mass);
    }

    const char* objective_name =
        request.objective == BoundObjective::Sched ? "sched" : "drop";
    json result;
    result["objective"] = objective_name;

    std::ostringstream report;
    report << "objective," << objective_name << "\n";
    if (r_drop) {
      report << "r_drop," << *r_drop << "\n";
      result["r_drop"] = *r_drop;
    }
    if (boundary_admitted) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%g", *boundary_admitted);
      report << "boundary_admitted," << buf << "\n";
      result["boundary_admitted"] = *boundary_admitted;
    }
    report << "bounds,";
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      report << (i ? " " : "") << bounds[i];
    }
    report << "\n";
    result["bounds"] = bounds;
    char buf[64];
    const double sched_cost = sched_unpifoness(bounds, dist);
    std::snprintf(buf, sizeof(buf), "%.9g", sched_cost);
    report << "sched_unpifoness," << buf << "\n";
    result["sched_unpifoness"] = sched_cost;
    const double sched_upper = sched_unpifoness_upper(bounds, dist);
    std::snprintf(buf, sizeof(buf), "%.9g", sched_upper);
    report << "sched_unpifoness_upper," << buf << "\n";
    result["sched_unpifoness_upper"] = sched_upper;
    if (!request.capacities.empty()) {
      const double drop_cost =
          drop_unpifoness(bounds, dist, request.capacities, total_mass);
      std::snprintf(buf, sizeof(buf), "%.9g", drop_cost);
      report << "drop_unpifoness," << buf << "\n";
      result["drop_unpifoness"] = drop_cost;
      const std::vector<double> loads = queue_loads(bounds, dist, total_mass);
      report << "loads,";
      for (std::size_t i = 0; i < loads.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%g", loads[i]);
        report << (i ? " " : "") << buf;
      }
      report << "\n";
      result["loads"] = loads;
    }

    std::cout << report.str();
    if (!request.out_dir.empty()) {
      const fs::path dir(request.out_dir);
      fs::create_directories(dir);
      OutputSet outputs;
      if (request.format == "json") {
        std::ofstream out = outputs.open(dir / "optimize.json");
        out << result.dump(2) << "\n";
      } else {
        std::ofstream out = outputs.open(dir / "optimize.csv");
        out << report.str();
      }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "optimize failed: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace packsched

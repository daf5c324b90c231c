#include "packsched/trace_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace packsched {

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string to_hex(std::uint64_t value) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, value);
  return std::string(buf);
}

namespace {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf);
}

}  // namespace

std::string canonical_run_description(const SchedulerConfig& config,
                                      const WorkloadSpec& workload,
                                      const SchedulerOptions& options,
                                      SchedulerKind kind, std::uint64_t seed) {
  std::ostringstream out;
  out << "scheduler=" << scheduler_kind_name(kind) << ";seed=" << seed
      << ";queues=" << config.queue_count << ";capacities=";
  for (std::size_t i = 0; i < config.capacities.size(); ++i) {
    out << (i ? "|" : "") << config.capacities[i];
  }
  out << ";window=" << config.window_size
      << ";burstiness=" << format_double(config.burstiness)
      << ";max_rank=" << config.max_rank
      << ";dist=" << dist_kind_name(workload.distribution.kind)
      << ";tau=" << format_double(workload.distribution.tau)
      << ";lambda=" << format_double(workload.distribution.lambda)
      << ";counts=";
  for (const auto& [rank, count] : workload.distribution.counts) {
    out << rank << ":" << format_double(count) << "|";
  }
  out << ";arrival_period=" << workload.arrival_period
      << ";departure_period=" << workload.departure_period
      << ";total_arrivals=" << workload.total_arrivals << ";flows=";
  for (const FlowSpec& flow : workload.flows) {
    out << flow.flow_id << ":" << flow.rank << ":" << flow.start_tick << ":"
        << flow.stop_tick << ":" << flow.arrival_period << "|";
  }
  out << ";sppifo_adaptive=" << (options.sppifo_adaptive ? 1 : 0)
      << ";sppifo_bounds=";
  if (options.sppifo_bounds) {
    for (std::int64_t b : *options.sppifo_bounds) {
      out << b << "|";
    }
  }
  out << ";aifo_threshold=";
  if (options.aifo_fixed_threshold) {
    out << *options.aifo_fixed_threshold;
  }
  out << ";window_include_dropped=" << (options.window_include_dropped ? 1 : 0);
  return out.str();
}

void write_trace(std::ostream& out, const Trace& trace) {
  const std::string desc =
      canonical_run_description(trace.config, trace.workload, trace.options,
                                trace.scheduler, trace.seed);
  out << "# scheduler=" << scheduler_kind_name(trace.scheduler)
      << " seed=" << trace.seed << " config=" << to_hex(fnv1a64(desc)) << "\n";
  out << "# columns: tick,kind,packet_id,rank,queue,reason,flow\n";
  for (const SimEvent& ev : trace.events) {
    out << ev.tick << ',' << event_kind_name(ev.kind) << ',' << ev.packet_id
        << ',' << ev.rank << ',';
    if (ev.kind == EventKind::Enqueue) {
      out << ev.queue_index;
    }
    out << ',';
    if (ev.kind == EventKind::Drop) {
      out << drop_reason_name(ev.reason);
    }
    out << ',';
    if (ev.flow_id != kNoFlow) {
      out << ev.flow_id;
    }
    out << '\n';
  }
}

void write_rank_table(std::ostream& out, const Trace& trace,
                      const PerRankTable& table) {
  const std::string desc =
      canonical_run_description(trace.config, trace.workload, trace.options,
                                trace.scheduler, trace.seed);
  out << "# scheduler=" << scheduler_kind_name(trace.scheduler)
      << " seed=" << trace.seed << " config=" << to_hex(fnv1a64(desc)) << "\n";
  out << "rank,arrived,forwarded,dropped,inversions\n";
  for (std::size_t r = 0; r < table.arrived.size(); ++r) {
    out << r << ',' << table.arrived[r] << ',' << table.forwarded[r] << ','
        << table.dropped[r] << ',' << table.inversions[r] << '\n';
  }
}

void write_summary(std::ostream& out, const Trace& trace,
                   const TraceSummary& summary, std::optional<double> delta,
                   const std::string& format) {
  const std::string desc =
      canonical_run_description(trace.config, trace.workload, trace.options,
                                trace.scheduler, trace.seed);
  const std::string hash = to_hex(fnv1a64(desc));
  char delta_buf[32] = {0};
  if (delta) {
    std::snprintf(delta_buf, sizeof(delta_buf), "%.6f", *delta);
  }
  if (format == "json") {
    out << "{\n"
        << "  \"scheduler\": \"" << scheduler_kind_name(trace.scheduler)
        << "\",\n"
        << "  \"seed\": " << trace.seed << ",\n"
        << "  \"config\": \"" << hash << "\",\n"
        << "  \"arrived\": " << summary.arrived << ",\n"
        << "  \"forwarded\": " << summary.forwarded << ",\n"
        << "  \"dropped\": " << summary.dropped << ",\n"
        << "  \"inversions\": " << summary.inversions << ",\n"
        << "  \"min_dropped_rank\": ";
    if (summary.min_dropped_rank) {
      out << *summary.min_dropped_rank;
    } else {
      out << "null";
    }
    out << ",\n  \"delta_vs_pifo\": ";
    if (delta) {
      out << delta_buf;
    } else {
      out << "null";
    }
    out << "\n}\n";
  } else {
    out << "# config=" << hash << "\n";
    out << "scheduler,seed,arrived,forwarded,dropped,inversions,"
           "min_dropped_rank,delta_vs_pifo\n";
    out << scheduler_kind_name(trace.scheduler) << ',' << trace.seed << ','
        << summary.arrived << ',' << summary.forwarded << ','
        << summary.dropped << ',' << summary.inversions << ',';
    if (summary.min_dropped_rank) {
      out << *summary.min_dropped_rank;
    }
    out << ',';
    if (delta) {
      out << delta_buf;
    }
    out << '\n';
  }
}

}  // namespace packsched

// Deterministic serialization of traces and metric tables. All writers
// produce byte-identical output for identical inputs.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "packsched/metrics.hpp"
#include "packsched/simulator.hpp"

namespace packsched {

// Stable 64-bit FNV-1a over a string; used to stamp outputs with a hash
// of the resolved configuration.
std::uint64_t fnv1a64(const std::string& text);
std::string to_hex(std::uint64_t value);

// Canonical single-line description of everything that determines a
// run's output. Hashing this gives the config hash embedded in files.
std::string canonical_run_description(const SchedulerConfig& config,
                                      const WorkloadSpec& workload,
                                      const SchedulerOptions& options,
                                      SchedulerKind kind, std::uint64_t seed);

// Event log, one line per event:
//   tick,kind,packet_id,rank,queue,reason,flow
// with empty fields where not applicable, preceded by '#' header lines
// carrying the scheduler kind, seed and config hash.
void write_trace(std::ostream& out, const Trace& trace);

// Per-rank counts as CSV: rank,arrived,forwarded,dropped,inversions.
void write_rank_table(std::ostream& out, const Trace& trace,
                      const PerRankTable& table);

// Headline metrics for one run; format "csv" or "json".
void write_summary(std::ostream& out, const Trace& trace,
                   const TraceSummary& summary, std::optional<double> delta,
                   const std::string& format);

}  // namespace packsched

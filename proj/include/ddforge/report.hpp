#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ddforge/montecarlo.hpp"

namespace ddforge {

inline constexpr const char* kToolVersion = "0.1.0";

// CSV schema: gate,no_decoherence,no_dd,pdd_np12,cdd_nc3,no_dd_stderr,
// pdd_stderr,cdd_stderr. Comma-separated, dot decimal, header row,
// newline-terminated.
std::string format_table_csv(const TableResult& t);

// Markdown grid mirroring the layout the CSV flattens, 4-decimal display.
std::string format_table_markdown(const TableResult& t);

// Columns: n,mean,std_error.
std::string format_sweep_csv(
    const std::vector<std::pair<int, FidelityStats>>& points);

std::string case_name(CaseId c);
std::string dd_name(DDMode dd);

// Schedule document {gate, scheme, order, total_time_us, items:[{duration_us,
// pulse}]}.
std::string schedule_to_json(const PulseSchedule& sched,
                             const std::string& gate,
                             const std::string& scheme, int order);

struct ScheduleDocument {
  std::string gate;
  std::string scheme;
  int order = 0;
  PulseSchedule schedule;
};

ScheduleDocument schedule_from_json(const std::string& text);

struct CellRecord {
  std::string gate;
  std::string dd;
  FidelityStats stats;
};

struct RunManifest {
  std::string tool_version = kToolVersion;
  ExperimentConfig config;
  double wall_time_s = 0.0;
  std::vector<CellRecord> cells;
};

std::string manifest_to_json(const RunManifest& m);
std::string manifest_to_csv(const RunManifest& m);
std::string manifest_to_markdown(const RunManifest& m);

// Write via temp file + rename so partial runs never leave a corrupt output.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace ddforge

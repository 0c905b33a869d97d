#include "ddforge/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ddforge {

namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string scheme_name(DDScheme s) {
  switch (s) {
    case DDScheme::None:
      return "none";
    case DDScheme::PDD:
      return "pdd";
    case DDScheme::CDD:
      return "cdd";
  }
  throw std::logic_error("scheme_name: bad scheme");
}

nlohmann::json stats_json(const FidelityStats& s) {
  return {{"mean", s.mean},
          {"std_dev", s.std_dev},
          {"std_error", s.std_error},
          {"n_pairs", s.n_pairs}};
}

nlohmann::json config_json(const ExperimentConfig& cfg) {
  return {{"case", case_name(cfg.case_id)},
          {"gate", cfg.gate},
          {"dd", dd_name(cfg.dd)},
          {"epsilon_rad_per_us", cfg.params.epsilon},
          {"delta_rad_per_us", cfg.params.delta},
          {"j_x_rad_per_us", cfg.params.j_x},
          {"j_z_rad_per_us", cfg.params.j_z},
          {"n_states", cfg.n_states},
          {"n_noise", cfg.n_noise},
          {"master_seed", cfg.master_seed},
          {"include_decoherence", cfg.include_decoherence},
          {"threads", cfg.threads}};
}

}  // namespace

std::string case_name(CaseId c) {
  switch (c) {
    case CaseId::Case1:
      return "1";
    case CaseId::Case2:
      return "2";
    case CaseId::Custom:
      return "custom";
  }
  throw std::logic_error("case_name: bad case");
}

std::string dd_name(DDMode dd) {
  if (dd.scheme == DDScheme::None) return "none";
  return scheme_name(dd.scheme) + "(" + std::to_string(dd.order) + ")";
}

std::string format_table_csv(const TableResult& t) {
  std::string out =
      "gate,no_decoherence,no_dd,pdd_np12,cdd_nc3,no_dd_stderr,pdd_stderr,"
      "cdd_stderr\n";
  for (const TableRow& row : t.rows) {
    out += row.gate;
    out += ',' + fixed(row.no_decoherence.mean, 6);
    out += ',' + fixed(row.no_dd.mean, 6);
    out += ',' + fixed(row.pdd.mean, 6);
    out += ',' + fixed(row.cdd.mean, 6);
    out += ',' + fixed(row.no_dd.std_error, 6);
    out += ',' + fixed(row.pdd.std_error, 6);
    out += ',' + fixed(row.cdd.std_error, 6);
    out += '\n';
  }
  return out;
}

std::string format_table_markdown(const TableResult& t) {
  std::string out = "| Gate | Without decoherences | With decoherences, no DD "
                    "| With decoherences, PDD (n_p = 12) | With decoherences, "
                    "CDD (n_c = 3) |\n";
  out += "|---|---|---|---|---|\n";
  for (const TableRow& row : t.rows) {
    out += "| " + row.gate;
    out += " | " + fixed(row.no_decoherence.mean, 4);
    out += " | " + fixed(row.no_dd.mean, 4);
    out += " | " + fixed(row.pdd.mean, 4);
    out += " | " + fixed(row.cdd.mean, 4);
    out += " |\n";
  }
  return out;
}

std::string format_sweep_csv(
    const std::vector<std::pair<int, FidelityStats>>& points) {
  std::string out = "n,mean,std_error\n";
  for (const auto& [n, stats] : points) {
    out += std::to_string(n);
    out += ',' + fixed(stats.mean, 6);
    out += ',' + fixed(stats.std_error, 6);
    out += '\n';
  }
  return out;
}

std::string schedule_to_json(const PulseSchedule& sched,
                             const std::string& gate,
                             const std::string& scheme, int order) {
  nlohmann::json items = nlohmann::json::array();
  for (const ScheduleItem& item : sched.items) {
    items.push_back({{"duration_us", item.duration_us},
                     {"pulse", std::string(pulse_name(item.pulse_after))}});
  }
  const nlohmann::json doc = {{"gate", gate},
                              {"scheme", scheme},
                              {"order", order},
                              {"total_time_us", sched.total_time_us},
                              {"items", items}};
  return doc.dump(2) + "\n";
}

ScheduleDocument schedule_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  ScheduleDocument out;
  out.gate = doc.at("gate").get<std::string>();
  out.scheme = doc.at("scheme").get<std::string>();
  out.order = doc.at("order").get<int>();
  out.schedule.total_time_us = doc.at("total_time_us").get<double>();
  double sum = 0.0;
  for (const auto& item : doc.at("items")) {
    const double d = item.at("duration_us").get<double>();
    out.schedule.items.push_back(
        {d, pulse_from_name(item.at("pulse").get<std::string>())});
    sum += d;
  }
  if (out.schedule.items.empty() ||
      std::abs(sum - out.schedule.total_time_us) >
          1e-9 * out.schedule.total_time_us) {
    throw std::invalid_argument(
        "schedule_from_json: durations do not add up to the total time");
  }
  return out;
}

std::string manifest_to_json(const RunManifest& m) {
  nlohmann::json cells = nlohmann::json::array();
  for (const CellRecord& c : m.cells) {
    nlohmann::json cell = stats_json(c.stats);
    cell["gate"] = c.gate;
    cell["dd"] = c.dd;
    cells.push_back(std::move(cell));
  }
  const nlohmann::json doc = {{"tool_version", m.tool_version},
                              {"config", config_json(m.config)},
                              {"master_seed", m.config.master_seed},
                              {"wall_time_s", m.wall_time_s},
                              {"cells", cells}};
  return doc.dump(2) + "\n";
}

std::string manifest_to_csv(const RunManifest& m) {
  std::string out = "gate,dd,mean,std_dev,std_error,n_pairs\n";
  for (const CellRecord& c : m.cells) {
    out += c.gate + ',' + c.dd;
    out += ',' + fixed(c.stats.mean, 6);
    out += ',' + fixed(c.stats.std_dev, 6);
    out += ',' + fixed(c.stats.std_error, 6);
    out += ',' + std::to_string(c.stats.n_pairs);
    out += '\n';
  }
  return out;
}

std::string manifest_to_markdown(const RunManifest& m) {
  std::string out = "| Gate | DD | Mean | Std error | Pairs |\n";
  out += "|---|---|---|---|---|\n";
  for (const CellRecord& c : m.cells) {
    out += "| " + c.gate + " | " + c.dd;
    out += " | " + fixed(c.stats.mean, 4);
    out += " | " + fixed(c.stats.std_error, 6);
    out += " | " + std::to_string(c.stats.n_pairs);
    out += " |\n";
  }
  return out;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

}  // namespace ddforge

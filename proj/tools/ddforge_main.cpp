#include <chrono>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddforge/report.hpp"

namespace {

using namespace ddforge;

// Semantic flag problems that CLI11's declarative checks cannot express.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CaseId parse_case(const std::string& s) {
  if (s == "1") return CaseId::Case1;
  if (s == "2") return CaseId::Case2;
  return CaseId::Custom;
}

struct DDFlags {
  std::string scheme = "none";
  int np = 0;
  int nc = 0;

  DDMode resolve() const {
    if (scheme == "none") return {DDScheme::None, 0};
    if (scheme == "pdd") {
      if (np < 1) throw ValidationError("--dd pdd requires --np >= 1");
      return {DDScheme::PDD, np};
    }
    if (nc < 1) throw ValidationError("--dd cdd requires --nc >= 1");
    return {DDScheme::CDD, nc};
  }
};

struct ParamFlags {
  std::string case_str = "1";
  // Entered in units of 2*pi MHz, e.g. --epsilon 10 means 2*pi x 10 MHz.
  double epsilon = 0.0;
  double delta = 0.0;
  double jx = -1.0;
  double jz = -1.0;

  void add_to(CLI::App& cmd, bool custom_allowed) {
    const std::vector<std::string> cases =
        custom_allowed ? std::vector<std::string>{"1", "2", "custom"}
                       : std::vector<std::string>{"1", "2"};
    cmd.add_option("--case", case_str, "parameter set")
        ->check(CLI::IsMember(cases))
        ->required();
    if (custom_allowed) {
      cmd.add_option("--epsilon", epsilon, "qubit energy (2*pi MHz)");
      cmd.add_option("--delta", delta, "transverse drive (2*pi MHz)");
      cmd.add_option("--jx", jx, "XX coupling strength (2*pi MHz)");
      cmd.add_option("--jz", jz, "ZZ coupling strength (2*pi MHz)");
    }
  }

  CaseId case_id() const { return parse_case(case_str); }

  SystemParams resolve() const {
    const CaseId c = case_id();
    if (c != CaseId::Custom) return case_params(c);
    if (jx < 0.0 || jz < 0.0) {
      throw ValidationError("--case custom requires --jx and --jz");
    }
    return {kTwoPi * epsilon, kTwoPi * delta, kTwoPi * jz, kTwoPi * jx};
  }
};

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw ValidationError("bad integer list: " + csv);
    out.push_back(v);
  }
  return out;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    atomic_write_file(out_path, content);
  }
}

struct CellOpts {
  ParamFlags params;
  DDFlags dd;
  std::string gate;
  int states = 0;
  int noise = 0;
  std::uint64_t seed = 1;
  bool no_decoherence = false;
  bool quick = false;
  std::string out_path;
  std::string format = "json";
};

ExperimentConfig build_config(const ParamFlags& params, const DDFlags& dd,
                              const std::string& gate, int states, int noise,
                              std::uint64_t seed, bool no_decoherence,
                              bool quick) {
  ExperimentConfig cfg;
  cfg.case_id = params.case_id();
  cfg.params = params.resolve();
  cfg.gate = gate;
  cfg.dd = dd.resolve();
  cfg.n_states = states > 0 ? states : (quick ? 20 : 100);
  cfg.n_noise = noise > 0 ? noise : (quick ? 100 : 1000);
  cfg.master_seed = seed;
  cfg.include_decoherence = !no_decoherence;
  return cfg;
}

int run_cell_cmd(const CellOpts& opt) {
  const ExperimentConfig cfg =
      build_config(opt.params, opt.dd, opt.gate, opt.states, opt.noise,
                   opt.seed, opt.no_decoherence, opt.quick);
  const auto t0 = std::chrono::steady_clock::now();
  const FidelityStats stats = run_cell(cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  char line[256];
  std::snprintf(line, sizeof line,
                "case=%s gate=%s dd=%s mean=%.6f std_error=%.6f n_pairs=%lld\n",
                case_name(cfg.case_id).c_str(), cfg.gate.c_str(),
                dd_name(cfg.dd).c_str(), stats.mean, stats.std_error,
                static_cast<long long>(stats.n_pairs));
  std::cout << line;

  if (!opt.out_path.empty()) {
    RunManifest manifest;
    manifest.config = cfg;
    manifest.wall_time_s = wall;
    manifest.cells.push_back({cfg.gate, dd_name(cfg.dd), stats});
    std::string doc;
    if (opt.format == "csv") {
      doc = manifest_to_csv(manifest);
    } else if (opt.format == "md") {
      doc = manifest_to_markdown(manifest);
    } else {
      doc = manifest_to_json(manifest);
    }
    atomic_write_file(opt.out_path, doc);
  }
  return 0;
}

struct TableOpts {
  ParamFlags params;
  std::uint64_t seed = 1;
  bool quick = false;
  std::string out_path;
  std::string format = "csv";
};

int run_table_cmd(const TableOpts& opt) {
  const TableResult table =
      reproduce_table(opt.params.case_id(), opt.seed, 0,
                      opt.quick ? 20 : 100, opt.quick ? 100 : 1000);
  emit(opt.format == "md" ? format_table_markdown(table)
                          : format_table_csv(table),
       opt.out_path);
  return 0;
}

struct SweepOpts {
  ParamFlags params;
  DDFlags dd;
  std::string gate;
  std::string np_list;
  std::string nc_list;
  std::uint64_t seed = 1;
  bool quick = false;
  std::string out_path;
};

int run_sweep_cmd(const SweepOpts& opt) {
  std::string list_str;
  DDScheme scheme;
  if (opt.dd.scheme == "pdd") {
    scheme = DDScheme::PDD;
    list_str = opt.np_list;
    if (list_str.empty()) throw ValidationError("--dd pdd requires --np-list");
  } else if (opt.dd.scheme == "cdd") {
    scheme = DDScheme::CDD;
    list_str = opt.nc_list;
    if (list_str.empty()) throw ValidationError("--dd cdd requires --nc-list");
  } else {
    throw ValidationError("sweep requires --dd pdd or --dd cdd");
  }
  const std::vector<int> orders = parse_int_list(list_str);
  if (orders.empty()) throw ValidationError("empty sweep list");

  std::vector<std::pair<int, FidelityStats>> points;
  for (const int n : orders) {
    DDFlags dd;
    dd.scheme = opt.dd.scheme;
    (scheme == DDScheme::PDD ? dd.np : dd.nc) = n;
    const ExperimentConfig cfg =
        build_config(opt.params, dd, opt.gate, 0, 0, opt.seed,
                     /*no_decoherence=*/false, opt.quick);
    points.emplace_back(n, run_cell(cfg));
  }
  emit(format_sweep_csv(points), opt.out_path);
  return 0;
}

struct ExportOpts {
  ParamFlags params;
  DDFlags dd;
  std::string gate;
  std::string out_path;
};

int run_export_cmd(const ExportOpts& opt) {
  const GateRef gate = find_gate(opt.gate);
  const auto* recipe = std::get_if<GateRecipe>(&gate);
  if (recipe == nullptr) {
    throw ValidationError(
        "schedule export applies to primitive gates (composites run one "
        "schedule per step)");
  }
  const DDMode dd = opt.dd.resolve();
  const PrimitiveEvolution pe =
      primitive_evolution(*recipe, opt.params.resolve());
  const PulseSchedule sched = make_schedule(dd, pe.t_us);
  emit(schedule_to_json(sched, recipe->name,
                        dd.scheme == DDScheme::None ? "none"
                        : dd.scheme == DDScheme::PDD ? "pdd"
                                                     : "cdd",
                        dd.order),
       opt.out_path);
  return 0;
}

void add_dd_flags(CLI::App& cmd, DDFlags& dd, bool required) {
  auto* opt = cmd.add_option("--dd", dd.scheme, "decoupling scheme")
                  ->check(CLI::IsMember({"none", "pdd", "cdd"}));
  if (required) opt->required();
  cmd.add_option("--np", dd.np, "PDD block repetitions");
  cmd.add_option("--nc", dd.nc, "CDD concatenation order");
}

void add_gate_flag(CLI::App& cmd, std::string& gate) {
  cmd.add_option("--gate", gate, "gate name")
      ->check(CLI::IsMember({"x", "s", "t", "u3", "u4", "h", "cz", "cnot"},
                            CLI::ignore_case))
      ->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pulse-level simulator of decoupling-protected quantum gates"};
  app.require_subcommand(1);

  CellOpts cell;
  auto* cell_cmd =
      app.add_subcommand("cell", "run one gate/DD Monte Carlo cell");
  cell.params.add_to(*cell_cmd, /*custom_allowed=*/true);
  add_gate_flag(*cell_cmd, cell.gate);
  add_dd_flags(*cell_cmd, cell.dd, /*required=*/true);
  cell_cmd->add_option("--states", cell.states, "initial states per cell");
  cell_cmd->add_option("--noise", cell.noise, "noise realizations per cell");
  cell_cmd->add_option("--seed", cell.seed, "master seed");
  cell_cmd->add_flag("--no-decoherence", cell.no_decoherence,
                     "drop the stochastic error term");
  cell_cmd->add_flag("--quick", cell.quick, "reduced counts (20 states, 100 draws)");
  cell_cmd->add_option("--out", cell.out_path, "manifest output path");
  cell_cmd->add_option("--format", cell.format, "manifest format")
      ->check(CLI::IsMember({"csv", "md", "json"}));

  TableOpts table;
  auto* table_cmd =
      app.add_subcommand("table", "full 5-gate x 4-column fidelity grid");
  table.params.add_to(*table_cmd, /*custom_allowed=*/false);
  table_cmd->add_option("--seed", table.seed, "master seed");
  table_cmd->add_flag("--quick", table.quick, "reduced counts");
  table_cmd->add_option("--out", table.out_path, "output path");
  table_cmd->add_option("--format", table.format, "output format")
      ->check(CLI::IsMember({"csv", "md"}));

  SweepOpts sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "fidelity vs pulse count for one gate");
  sweep.params.add_to(*sweep_cmd, /*custom_allowed=*/true);
  add_gate_flag(*sweep_cmd, sweep.gate);
  sweep_cmd->add_option("--dd", sweep.dd.scheme, "decoupling scheme")
      ->check(CLI::IsMember({"pdd", "cdd"}))
      ->required();
  sweep_cmd->add_option("--np-list", sweep.np_list, "comma-separated n_p values");
  sweep_cmd->add_option("--nc-list", sweep.nc_list, "comma-separated n_c values");
  sweep_cmd->add_option("--seed", sweep.seed, "master seed");
  sweep_cmd->add_flag("--quick", sweep.quick, "reduced counts");
  sweep_cmd->add_option("--out", sweep.out_path, "output path");

  ExportOpts exp;
  auto* export_cmd = app.add_subcommand("export-schedule",
                                        "emit a gate's pulse schedule as JSON");
  exp.params.add_to(*export_cmd, /*custom_allowed=*/true);
  add_gate_flag(*export_cmd, exp.gate);
  add_dd_flags(*export_cmd, exp.dd, /*required=*/true);
  export_cmd->add_option("--out", exp.out_path, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cell_cmd->parsed()) return run_cell_cmd(cell);
    if (table_cmd->parsed()) return run_table_cmd(table);
    if (sweep_cmd->parsed()) return run_sweep_cmd(sweep);
    if (export_cmd->parsed()) return run_export_cmd(exp);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

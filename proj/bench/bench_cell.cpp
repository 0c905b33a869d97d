// Timing comparison between the serial reference engine and the
// OpenMP-parallel engine on a representative Monte Carlo cell.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "ddforge/montecarlo.hpp"

using namespace ddforge;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig cfg = default_config(CaseId::Case1);
  cfg.gate = argc > 1 ? argv[1] : "x";
  cfg.dd = {DDScheme::CDD, 3};
  cfg.master_seed = 7;

  std::printf("cell: case 1, gate %s, cdd(3), %d noise draws x %d states\n",
              cfg.gate.c_str(), cfg.n_noise, cfg.n_states);

  auto t0 = std::chrono::steady_clock::now();
  cfg.threads = 1;
  const FidelityStats serial_ref = run_cell_reference(cfg);
  const double t_ref = seconds_since(t0);
  std::printf("serial reference (naive propagator): %7.3f s  mean=%.6f\n",
              t_ref, serial_ref.mean);

  t0 = std::chrono::steady_clock::now();
  const FidelityStats one_thread = run_cell(cfg);
  const double t_one = seconds_since(t0);
  std::printf("parallel engine, 1 worker:           %7.3f s  mean=%.6f  "
              "(%.1fx vs reference)\n",
              t_one, one_thread.mean, t_ref / t_one);

  cfg.threads = 0;
  const int workers = resolve_thread_count(0);
  t0 = std::chrono::steady_clock::now();
  const FidelityStats parallel = run_cell(cfg);
  const double t_par = seconds_since(t0);
  std::printf("parallel engine, %d worker(s):        %7.3f s  mean=%.6f  "
              "(%.1fx vs reference)\n",
              workers, t_par, parallel.mean, t_ref / t_par);

  const double drift = std::abs(parallel.mean - serial_ref.mean);
  std::printf("max |mean drift| vs reference: %.2e\n", drift);
  return drift < 1e-9 ? 0 : 1;
}

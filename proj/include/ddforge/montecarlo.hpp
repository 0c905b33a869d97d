#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddforge/gates.hpp"

namespace ddforge {

enum class CaseId { Case1, Case2, Custom };

// Case 1: eps = 2*pi*10, Delta = 0, Jx = Jz = 2*pi*100 (rad/us).
// Case 2: eps = 2*pi*100, rest unchanged.
SystemParams case_params(CaseId c);

struct ExperimentConfig {
  CaseId case_id = CaseId::Case1;
  SystemParams params{};
  std::string gate = "x";
  DDMode dd{};
  int n_states = 100;
  int n_noise = 1000;
  std::uint64_t master_seed = 1;
  bool include_decoherence = true;
  int threads = 0;  // 0: all available, capped by DDFORGE_THREADS
};

ExperimentConfig default_config(CaseId c);

struct FidelityStats {
  double mean = 0.0;
  double std_dev = 0.0;
  double std_error = 0.0;  // std_dev / sqrt(n_pairs)
  std::int64_t n_pairs = 0;
};

// Data amplitudes drawn with independent uniform [0, 1) real and imaginary
// parts and normalized, tensored with the recipe's ancilla state; the same
// ensemble on the full two-qubit space for the two-data-qubit gates.
ComplexVector sample_initial_state(RandomStream& rng, const GateRecipe& r);
ComplexVector sample_initial_state(RandomStream& rng, const CompositeRecipe& c);
ComplexVector sample_initial_state(RandomStream& rng, const GateRef& gate);

// Average gate fidelity over n_noise quasi-static noise draws times n_states
// shared initial states. Realization r derives its stream from
// (master_seed, r); the same states and noise draws are therefore reused
// across decoupling modes at a fixed seed. Noise realizations run in
// parallel; per-realization results are deposited by index and reduced in
// index order, so the outcome is bitwise independent of the worker count.
FidelityStats run_cell(const ExperimentConfig& cfg);

// Single-threaded reference: same estimator, straight accumulation, naive
// per-segment propagator. Kept for tests and the benchmark.
FidelityStats run_cell_reference(const ExperimentConfig& cfg);

struct TableRow {
  std::string gate;
  FidelityStats no_decoherence;
  FidelityStats no_dd;
  FidelityStats pdd;  // n_p = 12
  FidelityStats cdd;  // n_c = 3
};

struct TableResult {
  CaseId case_id;
  std::uint64_t master_seed;
  std::vector<TableRow> rows;  // x, s, t, u3, u4
};

// The full 5-gate x 4-column fidelity grid at the stated defaults.
TableResult reproduce_table(CaseId c, std::uint64_t seed, int threads = 0,
                            int n_states = 100, int n_noise = 1000);

// Worker count actually used for `requested` (0 means auto).
int resolve_thread_count(int requested);

}  // namespace ddforge

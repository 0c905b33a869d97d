#include "ddforge/montecarlo.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <stdexcept>

namespace ddforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Amplitudes with independent real and imaginary parts uniform on [0, 1),
// then normalized. Exchange-symmetric across basis states but not
// phase-invariant: relative phases concentrate near zero.
ComplexVector box_state(RandomStream& rng, Eigen::Index dim) {
  ComplexVector v(dim);
  do {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = rng.uniform01();
      const double im = rng.uniform01();
      v(i) = Complex{re, im};
    }
  } while (v.squaredNorm() == 0.0);
  return v / std::sqrt(v.squaredNorm());
}

// Everything fixed across noise realizations of one cell.
struct CellContext {
  GateRef gate;
  SystemParams params;
  DDMode dd;
  int n_qubits = 0;
  bool include_decoherence = true;
  double noise_bound = 0.0;
  std::uint64_t master_seed = 0;
  ComplexMatrix ideal_adjoint;
  std::vector<ComplexVector> states;
  // Primitive gates only; composites rebuild per step.
  ComplexMatrix h_system;
  PulseSchedule sched;
};

CellContext make_context(const ExperimentConfig& cfg) {
  if (cfg.n_states < 1 || cfg.n_noise < 1) {
    throw std::invalid_argument("run_cell: counts must be positive");
  }
  CellContext ctx;
  ctx.gate = find_gate(cfg.gate);
  ctx.params = cfg.case_id == CaseId::Custom ? cfg.params
                                             : case_params(cfg.case_id);
  ctx.dd = cfg.dd;
  ctx.include_decoherence = cfg.include_decoherence;
  ctx.noise_bound = std::max(std::abs(ctx.params.j_x), std::abs(ctx.params.j_z));
  ctx.master_seed = cfg.master_seed;

  if (const auto* prim = std::get_if<GateRecipe>(&ctx.gate)) {
    ctx.n_qubits = 2;
    ctx.ideal_adjoint = dagger(ideal_joint_target(*prim));
    const PrimitiveEvolution pe = primitive_evolution(*prim, ctx.params);
    ctx.h_system = pe.h_system;
    ctx.sched = make_schedule(cfg.dd, pe.t_us);
  } else {
    const auto& comp = std::get<CompositeRecipe>(ctx.gate);
    ctx.n_qubits = composite_qubit_count(comp);
    if (ctx.n_qubits > 3) {
      throw std::invalid_argument("run_cell: gate '" + comp.name +
                                  "' needs more than 3 qubits");
    }
    ctx.ideal_adjoint = dagger(composite_joint_target(comp));
  }

  RandomStream state_rng(derive_seed(cfg.master_seed, kInitialStateStream));
  ctx.states.reserve(cfg.n_states);
  for (int i = 0; i < cfg.n_states; ++i) {
    ctx.states.push_back(sample_initial_state(state_rng, ctx.gate));
  }
  return ctx;
}

struct Partial {
  double sum = 0.0;
  double sumsq = 0.0;
};

// One quasi-static noise realization: build the propagator once, score every
// shared initial state against the ideal target. State order is fixed, so the
// partial sums are deterministic for a given (master_seed, r).
Partial
score_realization(const CellContext& ctx, std::uint64_t r, bool reference) {
  RandomStream rng(derive_seed(ctx.master_seed, r));
  const NoiseSample noise =
      ctx.include_decoherence
          ? sample_noise(rng, ctx.noise_bound, ctx.n_qubits)
          : zero_noise(ctx.n_qubits);

  ComplexMatrix u;
  if (std::holds_alternative<GateRecipe>(ctx.gate)) {
    const ComplexMatrix h_total = ctx.h_system + build_error_hamiltonian(noise);
    u = reference ? propagator_reference(h_total, ctx.sched).matrix
                  : propagator(h_total, ctx.sched).matrix;
  } else {
    const auto& comp = std::get<CompositeRecipe>(ctx.gate);
    u = reference
            ? simulate_composite_reference(comp, ctx.params, ctx.dd, noise).matrix
            : simulate_composite(comp, ctx.params, ctx.dd, noise).matrix;
  }

  const ComplexMatrix m = ctx.ideal_adjoint * u;
  Partial part;
  for (const ComplexVector& psi : ctx.states) {
    const double f = std::norm(psi.dot(m * psi));
    part.sum += f;
    part.sumsq += f * f;
  }
  return part;
}

FidelityStats finish_stats(const std::vector<Partial>& partials,
                           std::int64_t n_pairs) {
  double sum = 0.0;
  double sumsq = 0.0;
  for (const Partial& p : partials) {  // fixed index order
    sum += p.sum;
    sumsq += p.sumsq;
  }
  FidelityStats stats;
  stats.n_pairs = n_pairs;
  stats.mean = sum / static_cast<double>(n_pairs);
  if (n_pairs > 1) {
    const double var =
        std::max(0.0, (sumsq - static_cast<double>(n_pairs) * stats.mean *
                                   stats.mean) /
                          static_cast<double>(n_pairs - 1));
    stats.std_dev = std::sqrt(var);
  }
  stats.std_error = stats.std_dev / std::sqrt(static_cast<double>(n_pairs));
  return stats;
}

}  // namespace

SystemParams case_params(CaseId c) {
  switch (c) {
    case CaseId::Case1:
      return {kTwoPi * 10.0, 0.0, kTwoPi * 100.0, kTwoPi * 100.0};
    case CaseId::Case2:
      return {kTwoPi * 100.0, 0.0, kTwoPi * 100.0, kTwoPi * 100.0};
    case CaseId::Custom:
      break;
  }
  throw std::invalid_argument("case_params: custom case has no preset");
}

ExperimentConfig default_config(CaseId c) {
  ExperimentConfig cfg;
  cfg.case_id = c;
  if (c != CaseId::Custom) cfg.params = case_params(c);
  return cfg;
}

ComplexVector sample_initial_state(RandomStream& rng, const GateRecipe& r) {
  if (r.ancilla == AncillaInit::None) return box_state(rng, 4);
  return kron_state(box_state(rng, 2), ancilla_state(r.ancilla));
}

ComplexVector sample_initial_state(RandomStream& rng,
                                   const CompositeRecipe& c) {
  ComplexVector psi = box_state(rng, Eigen::Index(1) << c.n_data);
  // Ancilla order matches the joint layout: A first, then B.
  for (const AncillaInit a : {AncillaInit::KetOne, AncillaInit::KetMinus}) {
    bool used = false;
    for (const CompositeStep& s : c.steps) used |= s.recipe.ancilla == a;
    if (used) psi = kron_state(psi, ancilla_state(a));
  }
  return psi;
}

ComplexVector sample_initial_state(RandomStream& rng, const GateRef& gate) {
  return std::visit(
      [&rng](const auto& g) { return sample_initial_state(rng, g); }, gate);
}

FidelityStats run_cell(const ExperimentConfig& cfg) {
  const CellContext ctx = make_context(cfg);
  const int n_real = cfg.include_decoherence ? cfg.n_noise : 1;
  std::vector<Partial> partials(n_real);

  const int threads = resolve_thread_count(cfg.threads);
  std::exception_ptr error;
  std::atomic<bool> failed{false};
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int r = 0; r < n_real; ++r) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      partials[r] = score_realization(ctx, static_cast<std::uint64_t>(r),
                                      /*reference=*/false);
    } catch (...) {
#pragma omp critical
      {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return finish_stats(partials,
                      static_cast<std::int64_t>(n_real) * cfg.n_states);
}

FidelityStats run_cell_reference(const ExperimentConfig& cfg) {
  const CellContext ctx = make_context(cfg);
  const int n_real = cfg.include_decoherence ? cfg.n_noise : 1;
  std::vector<Partial> partials(n_real);
  for (int r = 0; r < n_real; ++r) {
    partials[r] = score_realization(ctx, static_cast<std::uint64_t>(r),
                                    /*reference=*/true);
  }
  return finish_stats(partials,
                      static_cast<std::int64_t>(n_real) * cfg.n_states);
}

TableResult reproduce_table(CaseId c, std::uint64_t seed, int threads,
                            int n_states, int n_noise) {
  if (c == CaseId::Custom) {
    throw std::invalid_argument("reproduce_table: case must be 1 or 2");
  }
  TableResult table;
  table.case_id = c;
  table.master_seed = seed;
  for (const char* gate : {"x", "s", "t", "u3", "u4"}) {
    ExperimentConfig cfg = default_config(c);
    cfg.gate = gate;
    cfg.master_seed = seed;
    cfg.threads = threads;
    cfg.n_states = n_states;
    cfg.n_noise = n_noise;

    TableRow row;
    row.gate = gate;
    cfg.include_decoherence = false;
    cfg.dd = {DDScheme::None, 0};
    row.no_decoherence = run_cell(cfg);
    cfg.include_decoherence = true;
    row.no_dd = run_cell(cfg);
    cfg.dd = {DDScheme::PDD, 12};
    row.pdd = run_cell(cfg);
    cfg.dd = {DDScheme::CDD, 3};
    row.cdd = run_cell(cfg);
    table.rows.push_back(std::move(row));
  }
  return table;
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("DDFORGE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) {
      n = std::min(n, static_cast<int>(cap));
    }
  }
  return std::max(1, n);
}

}  // namespace ddforge

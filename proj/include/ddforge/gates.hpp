#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ddforge/evolve.hpp"
#include "ddforge/model.hpp"
#include "ddforge/schedule.hpp"

namespace ddforge {

// Ancilla preparation that turns a two-body coupling into an effective
// single-qubit rotation on the data qubit: |1> for a ZZ coupling, |-> for XX.
enum class AncillaInit { None, KetOne, KetMinus };

// A primitive gate: which coupling drives it, the signed rotation angle, the
// ancilla preparation (None means a genuine two-data-qubit gate), the scalar
// phase that completes the algebraic identity, and the exact target unitary
// on the data space.
struct GateRecipe {
  std::string name;
  CouplingKind coupling;
  double theta;  // radians, signed
  AncillaInit ancilla;
  Complex global_phase;
  ComplexMatrix ideal_data_unitary;  // 2x2 with ancilla, 4x4 without
};

struct EvolutionTime {
  double t_us;
  double coupling_sign;  // sign(theta), applied to the system Hamiltonian
};

// t = |theta| / coupling; negative angles are realized by running the drive
// Hamiltonian in reverse (every system term changes sign), never by evolving
// for 2*pi - |theta|. Throws on theta == 0 or coupling <= 0.
EvolutionTime evolution_time(double theta, double coupling);

// x, s, t, u3, u4.
const std::vector<GateRecipe>& primitive_catalog();

// The 4x4 target on the (data, ancilla) space: (phase * ideal 2x2) tensor I2
// for ancilla gates (the ancilla returns to its initial state), the 4x4 ideal
// itself for two-qubit gates.
ComplexMatrix ideal_joint_target(const GateRecipe& r);

// Ancilla single-qubit state: |1> or (|0> - |1>)/sqrt(2). Throws for None.
ComplexVector ancilla_state(AncillaInit a);

// Two-qubit system Hamiltonian realizing the recipe (data qubit 1, ancilla or
// second data qubit 2) with the angle sign already applied to the system
// terms, plus the evolution time.
struct PrimitiveEvolution {
  ComplexMatrix h_system;
  double t_us;
};
PrimitiveEvolution primitive_evolution(const GateRecipe& r,
                                       const SystemParams& p);

// One step of a composite gate. Single-qubit steps name the data qubit they
// act on; two-qubit steps act on data qubits (1, 2).
struct CompositeStep {
  GateRecipe recipe;
  int target = 1;
};

struct CompositeRecipe {
  std::string name;
  int n_data;  // 1 or 2
  Complex global_phase;
  std::vector<CompositeStep> steps;  // time order
  ComplexMatrix ideal_data_unitary;
};

// h (Hadamard), cz, cnot.
const std::vector<CompositeRecipe>& composite_catalog();

// Data qubits plus every distinct ancilla type used by any step. Joint-space
// layout: data qubits first, then ancilla A (|1>), then ancilla B (|->).
int composite_qubit_count(const CompositeRecipe& c);

// (phase * ideal data unitary) tensor identity on the ancillas.
ComplexMatrix composite_joint_target(const CompositeRecipe& c);

// Execute the steps sequentially on the full joint space: each step evolves
// under its own coupling Hamiltonian plus the error Hamiltonian for all
// qubits, protected by its own decoupling schedule. Idle qubits see the error
// terms and the global pulses only. Throws if more than 3 qubits would be
// required.
Propagator simulate_composite(const CompositeRecipe& c, const SystemParams& p,
                              DDMode dd, const NoiseSample& noise);

// Same contract, built on the naive per-segment propagator. Reference for
// tests and the benchmark.
Propagator simulate_composite_reference(const CompositeRecipe& c,
                                        const SystemParams& p, DDMode dd,
                                        const NoiseSample& noise);

using GateRef = std::variant<GateRecipe, CompositeRecipe>;

// Lookup by CLI name (case-insensitive): x, s, t, u3, u4, h, cz, cnot.
GateRef find_gate(std::string_view name);

}  // namespace ddforge

#pragma once

#include <array>
#include <vector>

#include "ddforge/linalg.hpp"
#include "ddforge/rng.hpp"

namespace ddforge {

// Physical knobs, all angular frequencies in rad/us. A value quoted as
// "2*pi x f MHz" enters as 2*pi*f, which keeps phases theta = J*t unit-free
// with time in microseconds.
struct SystemParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double j_z = 0.0;
  double j_x = 0.0;
};

enum class CouplingKind { ZZ, XX };

// Which pair of qubits the interaction couples (1-based indices).
struct HamiltonianKind {
  CouplingKind variant;
  int qubit_a;
  int qubit_b;
};

// One quasi-static draw of the stochastic field: (delta_x, delta_y, delta_z)
// per qubit, held fixed over a full gate execution and resampled per Monte
// Carlo realization.
struct NoiseSample {
  int n_qubits = 0;
  std::vector<std::array<double, 3>> deltas;
};

// H = eps/2 (sz_a + sz_b) + Delta/2 (sx_a + sx_b) + J sc_a sc_b with c = z or
// x by kind, embedded in the n_qubits register. Idle qubits carry no system
// terms. Negative coupling values are legal (sign-reversed interaction).
ComplexMatrix build_system_hamiltonian(const HamiltonianKind& kind,
                                       const SystemParams& p, int n_qubits);

// Sum over qubits and axes of delta * sigma.
ComplexMatrix build_error_hamiltonian(const NoiseSample& s);

// Each of the 3*n_qubits components drawn independently from
// [-noise_bound, noise_bound], in (qubit, axis) order.
NoiseSample sample_noise(RandomStream& rng, double noise_bound, int n_qubits);

NoiseSample zero_noise(int n_qubits);

}  // namespace ddforge

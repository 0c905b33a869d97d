#include "ddforge/model.hpp"

#include <stdexcept>

namespace ddforge {

namespace {

int check_register(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 3) {
    throw std::invalid_argument("qubit count must be 1..3");
  }
  return n_qubits;
}

}  // namespace

ComplexMatrix build_system_hamiltonian(const HamiltonianKind& kind,
                                       const SystemParams& p, int n_qubits) {
  check_register(n_qubits);
  const int a = kind.qubit_a;
  const int b = kind.qubit_b;
  if (a < 1 || a > n_qubits || b < 1 || b > n_qubits || a == b) {
    throw std::invalid_argument("build_system_hamiltonian: bad qubit pair");
  }
  const Axis coupling_axis =
      kind.variant == CouplingKind::ZZ ? Axis::Z : Axis::X;
  const double coupling =
      kind.variant == CouplingKind::ZZ ? p.j_z : p.j_x;

  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (int q : {a, b}) {
    h += (p.epsilon / 2.0) * embed_single(Axis::Z, q, n_qubits);
    h += (p.delta / 2.0) * embed_single(Axis::X, q, n_qubits);
  }
  h += coupling * ComplexMatrix(embed_single(coupling_axis, a, n_qubits) *
                                embed_single(coupling_axis, b, n_qubits));
  return h;
}

ComplexMatrix build_error_hamiltonian(const NoiseSample& s) {
  check_register(s.n_qubits);
  if (static_cast<int>(s.deltas.size()) != s.n_qubits) {
    throw std::invalid_argument("build_error_hamiltonian: malformed sample");
  }
  const Eigen::Index dim = Eigen::Index(1) << s.n_qubits;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  constexpr Axis axes[3] = {Axis::X, Axis::Y, Axis::Z};
  for (int k = 0; k < s.n_qubits; ++k) {
    for (int a = 0; a < 3; ++a) {
      if (s.deltas[k][a] == 0.0) continue;
      h += s.deltas[k][a] * embed_single(axes[a], k + 1, s.n_qubits);
    }
  }
  return h;
}

NoiseSample sample_noise(RandomStream& rng, double noise_bound, int n_qubits) {
  check_register(n_qubits);
  if (noise_bound < 0.0) {
    throw std::invalid_argument("sample_noise: negative bound");
  }
  NoiseSample s;
  s.n_qubits = n_qubits;
  s.deltas.resize(n_qubits);
  for (int k = 0; k < n_qubits; ++k) {
    for (int a = 0; a < 3; ++a) {
      s.deltas[k][a] = rng.uniform_symmetric(noise_bound);
    }
  }
  return s;
}

NoiseSample zero_noise(int n_qubits) {
  check_register(n_qubits);
  NoiseSample s;
  s.n_qubits = n_qubits;
  s.deltas.assign(n_qubits, {0.0, 0.0, 0.0});
  return s;
}

}  // namespace ddforge

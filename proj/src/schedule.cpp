#include "ddforge/schedule.hpp"

#include <stdexcept>

namespace ddforge {

namespace {

void check_duration(double t_us) {
  if (!(t_us > 0.0)) {
    throw std::invalid_argument("schedule: total time must be positive");
  }
}

// Pulse pattern of one base block in time order: evolve, X, evolve, Z,
// evolve, X, evolve, Z.
constexpr PulseKind kBaseBlock[4] = {PulseKind::GlobalX, PulseKind::GlobalZ,
                                     PulseKind::GlobalX, PulseKind::GlobalZ};

std::vector<PulseKind> cdd_pulses(int n_c) {
  if (n_c == 1) {
    return {kBaseBlock[0], kBaseBlock[1], kBaseBlock[2], kBaseBlock[3]};
  }
  const std::vector<PulseKind> inner = cdd_pulses(n_c - 1);
  std::vector<PulseKind> out;
  out.reserve(inner.size() * 4);
  for (PulseKind outer : kBaseBlock) {
    out.insert(out.end(), inner.begin(), inner.end());
    out.back() = fuse_pulses(outer, out.back());
  }
  return out;
}

}  // namespace

PulseSchedule none_schedule(double t_us) {
  check_duration(t_us);
  return {t_us, {{t_us, PulseKind::Identity}}};
}

PulseSchedule pdd_schedule(double t_us, int n_p) {
  check_duration(t_us);
  if (n_p < 1) throw std::invalid_argument("pdd_schedule: n_p must be >= 1");
  const double segment = t_us / (4.0 * n_p);
  PulseSchedule sched;
  sched.total_time_us = t_us;
  sched.items.reserve(4 * static_cast<std::size_t>(n_p));
  for (int block = 0; block < n_p; ++block) {
    for (PulseKind p : kBaseBlock) sched.items.push_back({segment, p});
  }
  return sched;
}

PulseSchedule cdd_schedule(double t_us, int n_c) {
  check_duration(t_us);
  if (n_c < 1) throw std::invalid_argument("cdd_schedule: n_c must be >= 1");
  if (n_c > 10) throw std::invalid_argument("cdd_schedule: n_c too large");
  const std::vector<PulseKind> pulses = cdd_pulses(n_c);
  const double segment = t_us / static_cast<double>(pulses.size());
  PulseSchedule sched;
  sched.total_time_us = t_us;
  sched.items.reserve(pulses.size());
  for (PulseKind p : pulses) sched.items.push_back({segment, p});
  return sched;
}

ComplexMatrix pulse_matrix(PulseKind p, int n_qubits) {
  if (n_qubits < 1 || n_qubits > 3) {
    throw std::invalid_argument("pulse_matrix: qubit count must be 1..3");
  }
  ComplexMatrix single;
  switch (p) {
    case PulseKind::Identity:
      single = identity(2);
      break;
    case PulseKind::GlobalX:
      single = pauli(Axis::X);
      break;
    case PulseKind::GlobalY:
      single = pauli(Axis::Y);
      break;
    case PulseKind::GlobalZ:
      single = pauli(Axis::Z);
      break;
  }
  ComplexMatrix out = single;
  for (int q = 1; q < n_qubits; ++q) out = kron(out, single);
  return out;
}

PulseKind fuse_pulses(PulseKind later, PulseKind earlier) {
  if (later == PulseKind::Identity) return earlier;
  if (earlier == PulseKind::Identity) return later;
  if (later == earlier) return PulseKind::Identity;
  // Distinct non-identity Paulis multiply to the third, up to phase.
  const int sum = static_cast<int>(later) + static_cast<int>(earlier);
  return static_cast<PulseKind>(1 + 2 + 3 - sum);
}

std::string_view pulse_name(PulseKind p) {
  switch (p) {
    case PulseKind::Identity:
      return "I";
    case PulseKind::GlobalX:
      return "X";
    case PulseKind::GlobalY:
      return "Y";
    case PulseKind::GlobalZ:
      return "Z";
  }
  throw std::logic_error("pulse_name: bad kind");
}

PulseKind pulse_from_name(std::string_view name) {
  if (name == "I") return PulseKind::Identity;
  if (name == "X") return PulseKind::GlobalX;
  if (name == "Y") return PulseKind::GlobalY;
  if (name == "Z") return PulseKind::GlobalZ;
  throw std::invalid_argument("pulse_from_name: unknown pulse");
}

PulseSchedule make_schedule(DDMode dd, double t_us) {
  switch (dd.scheme) {
    case DDScheme::None:
      return none_schedule(t_us);
    case DDScheme::PDD:
      return pdd_schedule(t_us, dd.order);
    case DDScheme::CDD:
      return cdd_schedule(t_us, dd.order);
  }
  throw std::logic_error("make_schedule: bad scheme");
}

}  // namespace ddforge

#pragma once

#include <string_view>
#include <vector>

#include "ddforge/linalg.hpp"

namespace ddforge {

// Element of the decoupling group {I, sx, sy, sz}^(tensor N) applied between
// free-evolution segments.
enum class PulseKind { Identity, GlobalX, GlobalY, GlobalZ };

struct ScheduleItem {
  double duration_us;
  PulseKind pulse_after;
};

// Free-evolution segments interleaved with instantaneous global Pauli pulses,
// listed in time order. All generators here produce uniform segments.
struct PulseSchedule {
  double total_time_us = 0.0;
  std::vector<ScheduleItem> items;
};

// Single segment, no pulses.
PulseSchedule none_schedule(double t_us);

// Periodic decoupling: the base block (evolve, X, evolve, Z, evolve, X,
// evolve, Z) repeated n_p times, segment length t / (4 n_p).
PulseSchedule pdd_schedule(double t_us, int n_p);

// Concatenated decoupling of order n_c: the base block recursively nested,
// 4^n_c segments of length t / 4^n_c. Pulses meeting at the same slot are
// fused by Pauli multiplication; the scalar phase is dropped.
PulseSchedule cdd_schedule(double t_us, int n_c);

// N-fold Kronecker power of the pulse's Pauli (or the identity).
ComplexMatrix pulse_matrix(PulseKind p, int n_qubits);

// Group product, phase dropped: matrices satisfy
// pulse(later) * pulse(earlier) = phase * pulse(fuse_pulses(later, earlier)).
PulseKind fuse_pulses(PulseKind later, PulseKind earlier);

std::string_view pulse_name(PulseKind p);        // "I", "X", "Y", "Z"
PulseKind pulse_from_name(std::string_view name);

// Decoupling mode requested for a gate execution.
enum class DDScheme { None, PDD, CDD };

struct DDMode {
  DDScheme scheme = DDScheme::None;
  int order = 0;  // n_p for PDD, n_c for CDD, ignored for None
};

PulseSchedule make_schedule(DDMode dd, double t_us);

}  // namespace ddforge

#pragma once

#include "ddforge/linalg.hpp"
#include "ddforge/schedule.hpp"

namespace ddforge {

struct Propagator {
  ComplexMatrix matrix;
  double total_time_us = 0.0;
};

// Total propagator of h_total under the schedule: segments and pulses
// multiplied in time order. The Hamiltonian is eigendecomposed once and the
// decomposition reused for every segment.
Propagator propagator(const ComplexMatrix& h_total, const PulseSchedule& sched);

// Straight-line product with one fresh matrix exponential per segment. Kept
// as the reference implementation the fast path is tested and benchmarked
// against.
Propagator propagator_reference(const ComplexMatrix& h_total,
                                const PulseSchedule& sched);

// |<psi0| u_ideal^dagger u_actual |psi0>|^2. Throws if psi0 is not normalized
// (within 1e-9) or dimensions disagree.
double fidelity(const ComplexVector& psi0, const ComplexMatrix& u_actual,
                const ComplexMatrix& u_ideal);

}  // namespace ddforge

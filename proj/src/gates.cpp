#include "ddforge/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddforge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

ComplexMatrix diag2(Complex a, Complex b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// e^{i theta sigma_z} and e^{i theta sigma_x}: the effective data rotations
// produced by a coupling evolution against an ancilla eigenstate.
ComplexMatrix rot_z(double theta) {
  return diag2(std::polar(1.0, theta), std::polar(1.0, -theta));
}

ComplexMatrix rot_x(double theta) {
  ComplexMatrix m(2, 2);
  m << std::cos(theta), kI * std::sin(theta), kI * std::sin(theta),
      std::cos(theta);
  return m;
}

GateRecipe rotation_step(CouplingKind kind, double theta) {
  const bool zz = kind == CouplingKind::ZZ;
  GateRecipe r;
  r.name = (zz ? "rz(" : "rx(") + std::to_string(theta) + ")";
  r.coupling = kind;
  r.theta = theta;
  r.ancilla = zz ? AncillaInit::KetOne : AncillaInit::KetMinus;
  r.global_phase = 1.0;
  r.ideal_data_unitary = zz ? rot_z(theta) : rot_x(theta);
  return r;
}

const GateRecipe& primitive_by_name(std::string_view name) {
  for (const GateRecipe& r : primitive_catalog()) {
    if (r.name == name) return r;
  }
  throw std::logic_error("primitive_by_name: missing recipe");
}

bool uses_ancilla(const CompositeRecipe& c, AncillaInit a) {
  return std::any_of(c.steps.begin(), c.steps.end(),
                     [a](const CompositeStep& s) { return s.recipe.ancilla == a; });
}

}  // namespace

EvolutionTime evolution_time(double theta, double coupling) {
  if (theta == 0.0) {
    throw std::invalid_argument("evolution_time: zero-duration gate");
  }
  if (!(coupling > 0.0)) {
    throw std::invalid_argument("evolution_time: coupling must be positive");
  }
  return {std::abs(theta) / coupling, theta >= 0.0 ? 1.0 : -1.0};
}

const std::vector<GateRecipe>& primitive_catalog() {
  static const std::vector<GateRecipe> catalog = [] {
    std::vector<GateRecipe> v;

    // x = -i e^{i (pi/2) sigma_x}
    GateRecipe x;
    x.name = "x";
    x.coupling = CouplingKind::XX;
    x.theta = kPi / 2.0;
    x.ancilla = AncillaInit::KetMinus;
    x.global_phase = -kI;
    x.ideal_data_unitary = pauli(Axis::X);
    v.push_back(std::move(x));

    // s = e^{i pi/4} e^{-i (pi/4) sigma_z} = diag(1, i)
    GateRecipe s;
    s.name = "s";
    s.coupling = CouplingKind::ZZ;
    s.theta = -kPi / 4.0;
    s.ancilla = AncillaInit::KetOne;
    s.global_phase = std::polar(1.0, kPi / 4.0);
    s.ideal_data_unitary = diag2(1.0, kI);
    v.push_back(std::move(s));

    // t = e^{i pi/8} e^{-i (pi/8) sigma_z} = diag(1, e^{i pi/4})
    GateRecipe t;
    t.name = "t";
    t.coupling = CouplingKind::ZZ;
    t.theta = -kPi / 8.0;
    t.ancilla = AncillaInit::KetOne;
    t.global_phase = std::polar(1.0, kPi / 8.0);
    t.ideal_data_unitary = diag2(1.0, std::polar(1.0, kPi / 4.0));
    v.push_back(std::move(t));

    // u3 = e^{i (pi/4) sigma_z sigma_z}
    GateRecipe u3;
    u3.name = "u3";
    u3.coupling = CouplingKind::ZZ;
    u3.theta = -kPi / 4.0;
    u3.ancilla = AncillaInit::None;
    u3.global_phase = 1.0;
    {
      const Complex p = std::polar(1.0, kPi / 4.0);
      const Complex m = std::polar(1.0, -kPi / 4.0);
      ComplexMatrix ideal = ComplexMatrix::Zero(4, 4);
      ideal(0, 0) = p;
      ideal(1, 1) = m;
      ideal(2, 2) = m;
      ideal(3, 3) = p;
      u3.ideal_data_unitary = std::move(ideal);
    }
    v.push_back(std::move(u3));

    // u4 = e^{i (pi/4) sigma_x sigma_x}
    GateRecipe u4;
    u4.name = "u4";
    u4.coupling = CouplingKind::XX;
    u4.theta = -kPi / 4.0;
    u4.ancilla = AncillaInit::None;
    u4.global_phase = 1.0;
    {
      const ComplexMatrix xx = kron(pauli(Axis::X), pauli(Axis::X));
      u4.ideal_data_unitary =
          std::cos(kPi / 4.0) * identity(4) + kI * std::sin(kPi / 4.0) * xx;
    }
    v.push_back(std::move(u4));

    return v;
  }();
  return catalog;
}

ComplexMatrix ideal_joint_target(const GateRecipe& r) {
  if (r.ancilla == AncillaInit::None) return r.ideal_data_unitary;
  return kron(r.ideal_data_unitary, identity(2));
}

ComplexVector ancilla_state(AncillaInit a) {
  ComplexVector v(2);
  switch (a) {
    case AncillaInit::KetOne:
      v << 0.0, 1.0;
      return v;
    case AncillaInit::KetMinus:
      v << 1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2;
      return v;
    case AncillaInit::None:
      break;
  }
  throw std::invalid_argument("ancilla_state: gate has no ancilla");
}

namespace {

// A negative angle runs the drive in reverse: every system term changes
// sign (the stochastic field does not).
SystemParams reversed(const SystemParams& p, double sign) {
  return {sign * p.epsilon, sign * p.delta, sign * p.j_z, sign * p.j_x};
}

}  // namespace

PrimitiveEvolution primitive_evolution(const GateRecipe& r,
                                       const SystemParams& p) {
  const double coupling =
      r.coupling == CouplingKind::ZZ ? p.j_z : p.j_x;
  const EvolutionTime et = evolution_time(r.theta, coupling);
  return {build_system_hamiltonian({r.coupling, 1, 2},
                                   reversed(p, et.coupling_sign), 2),
          et.t_us};
}

const std::vector<CompositeRecipe>& composite_catalog() {
  static const std::vector<CompositeRecipe> catalog = [] {
    std::vector<CompositeRecipe> v;

    // h = -i rx(pi/2) rz(-pi/4) rx(-pi/4) rz(pi/4), steps in time order
    CompositeRecipe h;
    h.name = "h";
    h.n_data = 1;
    h.global_phase = -kI;
    h.steps = {{rotation_step(CouplingKind::ZZ, kPi / 4.0), 1},
               {rotation_step(CouplingKind::XX, -kPi / 4.0), 1},
               {rotation_step(CouplingKind::ZZ, -kPi / 4.0), 1},
               {rotation_step(CouplingKind::XX, kPi / 2.0), 1}};
    {
      ComplexMatrix ideal(2, 2);
      const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
      ideal << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
      h.ideal_data_unitary = std::move(ideal);
    }
    v.push_back(h);

    // cz = e^{-i pi/4} (s tensor s) u3, i.e. u3 first, then s on each qubit
    CompositeRecipe cz;
    cz.name = "cz";
    cz.n_data = 2;
    cz.global_phase = std::polar(1.0, -kPi / 4.0);
    cz.steps = {{primitive_by_name("u3"), 0},
                {primitive_by_name("s"), 1},
                {primitive_by_name("s"), 2}};
    {
      ComplexMatrix ideal = identity(4);
      ideal(3, 3) = -1.0;
      cz.ideal_data_unitary = std::move(ideal);
    }
    v.push_back(cz);

    // cnot = (I tensor h) cz (I tensor h); the -i phases of the two Hadamard
    // expansions and the cz phase combine to -e^{-i pi/4}
    CompositeRecipe cnot;
    cnot.name = "cnot";
    cnot.n_data = 2;
    cnot.global_phase = -std::polar(1.0, -kPi / 4.0);
    for (const CompositeStep& s : v[0].steps) cnot.steps.push_back({s.recipe, 2});
    for (const CompositeStep& s : v[1].steps) cnot.steps.push_back(s);
    for (const CompositeStep& s : v[0].steps) cnot.steps.push_back({s.recipe, 2});
    {
      ComplexMatrix ideal = ComplexMatrix::Zero(4, 4);
      ideal(0, 0) = 1.0;
      ideal(1, 1) = 1.0;
      ideal(2, 3) = 1.0;
      ideal(3, 2) = 1.0;
      cnot.ideal_data_unitary = std::move(ideal);
    }
    v.push_back(std::move(cnot));

    return v;
  }();
  return catalog;
}

int composite_qubit_count(const CompositeRecipe& c) {
  return c.n_data + (uses_ancilla(c, AncillaInit::KetOne) ? 1 : 0) +
         (uses_ancilla(c, AncillaInit::KetMinus) ? 1 : 0);
}

ComplexMatrix composite_joint_target(const CompositeRecipe& c) {
  const int n_anc = composite_qubit_count(c) - c.n_data;
  if (n_anc == 0) return c.ideal_data_unitary;
  return kron(c.ideal_data_unitary, identity(Eigen::Index(1) << n_anc));
}

namespace {

Propagator run_composite(const CompositeRecipe& c, const SystemParams& p,
                         DDMode dd, const NoiseSample& noise,
                         Propagator (*propagate)(const ComplexMatrix&,
                                                 const PulseSchedule&)) {
  const int n_qubits = composite_qubit_count(c);
  if (n_qubits > 3) {
    throw std::invalid_argument("simulate_composite: gate '" + c.name +
                                "' needs more than 3 qubits");
  }
  if (noise.n_qubits != n_qubits) {
    throw std::invalid_argument(
        "simulate_composite: noise sample has the wrong register size");
  }
  // Joint layout: data qubits, then ancilla A (|1>), then ancilla B (|->).
  const int ancilla_a = c.n_data + 1;
  const int ancilla_b =
      c.n_data + (uses_ancilla(c, AncillaInit::KetOne) ? 2 : 1);

  const ComplexMatrix h_error = build_error_hamiltonian(noise);
  ComplexMatrix u = identity(Eigen::Index(1) << n_qubits);
  double total_time = 0.0;
  for (const CompositeStep& step : c.steps) {
    const GateRecipe& r = step.recipe;
    int a = 1, b = 2;
    if (r.ancilla != AncillaInit::None) {
      a = step.target;
      b = r.ancilla == AncillaInit::KetOne ? ancilla_a : ancilla_b;
    }
    const double coupling = r.coupling == CouplingKind::ZZ ? p.j_z : p.j_x;
    const EvolutionTime et = evolution_time(r.theta, coupling);
    const ComplexMatrix h_step =
        build_system_hamiltonian({r.coupling, a, b},
                                 reversed(p, et.coupling_sign), n_qubits) +
        h_error;
    u = propagate(h_step, make_schedule(dd, et.t_us)).matrix * u;
    total_time += et.t_us;
  }
  return {std::move(u), total_time};
}

}  // namespace

Propagator simulate_composite(const CompositeRecipe& c, const SystemParams& p,
                              DDMode dd, const NoiseSample& noise) {
  return run_composite(c, p, dd, noise, &propagator);
}

Propagator simulate_composite_reference(const CompositeRecipe& c,
                                        const SystemParams& p, DDMode dd,
                                        const NoiseSample& noise) {
  return run_composite(c, p, dd, noise, &propagator_reference);
}

GateRef find_gate(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  for (const GateRecipe& r : primitive_catalog()) {
    if (r.name == lower) return r;
  }
  for (const CompositeRecipe& c : composite_catalog()) {
    if (c.name == lower) return c;
  }
  throw std::invalid_argument("unknown gate: " + std::string(name));
}

}  // namespace ddforge

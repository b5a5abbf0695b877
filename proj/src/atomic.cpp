#include "znsim/atomic.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <nlohmann/json.hpp>

#include "znsim/algebra.hpp"

namespace znsim {

using cd = std::complex<double>;
using std::numbers::pi;
using nlohmann::json;

namespace {

constexpr double kPi4 = pi / 4.0;

void require_z2(const StateVector& s) {
  if (s.layout().groupOrder != 2) {
    throw WrongGroupOrderError("WrongGroupOrder: the pulse layer is Z_2 only");
  }
}

Eigen::Matrix2cd rotation_gate(const Eigen::Vector3d& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) {
    throw OutOfRangeError("OutOfRange: rotation axis must be a unit vector");
  }
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, cd(0, -1), cd(0, 1), 0;
  sz << 1, 0, 0, -1;
  const Eigen::Matrix2cd ns = axis.x() * sx + axis.y() * sy + axis.z() * sz;
  return std::cos(angle) * Eigen::Matrix2cd::Identity() - cd(0, 1) * std::sin(angle) * ns;
}

Pulse link_rotation(const Eigen::Vector3d& axis, double angle, std::vector<int> targets) {
  return {PulseKind::LinkRotation, axis, angle, std::move(targets)};
}

Pulse control_rotation(const Eigen::Vector3d& axis, double angle) {
  return {PulseKind::ControlRotation, axis, angle, {}};
}

const Eigen::Vector3d kX{1, 0, 0};
const Eigen::Vector3d kY{0, 1, 0};
const Eigen::Vector3d kZ{0, 0, 1};

}  // namespace

void apply_pulse(StateVector& s, const Pulse& p) {
  require_z2(s);
  const RegisterLayout& layout = s.layout();
  switch (p.kind) {
    case PulseKind::LinkRotation: {
      const Eigen::MatrixXcd gate = rotation_gate(p.axis, p.angle);
      for (int slot : p.targets) {
        const std::array<int, 1> slots = {slot};
        apply_qudit_gate(s, slots, gate);
      }
      break;
    }
    case PulseKind::ControlRotation: {
      if (layout.ancillaCount == 0) throw NoAncillaError("NoAncilla: control rotation");
      const std::array<int, 1> slots = {layout.ancillaSlot()};
      apply_qudit_gate(s, slots, rotation_gate(p.axis, p.angle));
      break;
    }
    case PulseKind::CollisionAB: {
      if (layout.ancillaCount == 0) throw NoAncillaError("NoAncilla: a-b collision");
      // diagonal phase e^{-i phi z_link z_anc}, z = +1 for |m=0>
      Eigen::MatrixXcd gate = Eigen::MatrixXcd::Zero(4, 4);
      for (int ma = 0; ma < 2; ++ma) {
        for (int ml = 0; ml < 2; ++ml) {
          const double zz = (ma == 0 ? 1.0 : -1.0) * (ml == 0 ? 1.0 : -1.0);
          gate(2 * ma + ml, 2 * ma + ml) = std::polar(1.0, -p.angle * zz);
        }
      }
      const std::array<int, 2> slots = {layout.ancillaSlot(), p.targets.at(0)};
      apply_qudit_gate(s, slots, gate);
      break;
    }
    case PulseKind::CollisionBPsi: {
      if (layout.ancillaCount == 0) throw NoAncillaError("NoAncilla: b-psi collision");
      // e^{(-phi/pi) n log sigma~_z} with log sigma~_z = i pi (1 - sigma~_z)/2:
      // diag(1, e^{-i phi}) on the ancilla where the mode is occupied.
      Eigen::Matrix2cd a = Eigen::Matrix2cd::Zero();
      a(1, 1) = cd(0.0, -p.angle);
      apply_controlled_fermion_log(s, p.targets.at(0), a);
      break;
    }
    case PulseKind::Tunneling: {
      apply_fermionic_exponential(s, p.targets.at(0), p.targets.at(1), p.angle);
      break;
    }
  }
}

void apply_sequence(StateVector& s, const AtomicSequence& seq) {
  for (const Pulse& p : seq.pulses) apply_pulse(s, p);
}

AtomicSequence compile_link_entangler(int linkSlot) {
  AtomicSequence seq;
  seq.compiles = "link_entangler";
  seq.pulses = {
      control_rotation(kZ, kPi4),
      link_rotation(kX, kPi4, {linkSlot}),
      link_rotation(kY, kPi4, {linkSlot}),
      {PulseKind::CollisionAB, {}, kPi4, {linkSlot}},
      link_rotation(kY, -kPi4, {linkSlot}),
  };
  return seq;
}

AtomicSequence compile_link_entangler(const LatticeGeometry& g, Link l) {
  return compile_link_entangler(g.linkIndex(l));
}

AtomicSequence compile_plaquette_entangler(const std::array<int, 4>& slots) {
  AtomicSequence seq;
  seq.compiles = "plaquette_entangler";
  std::vector<int> all(slots.begin(), slots.end());
  seq.pulses = {
      control_rotation(kZ, pi),  // four shared pi/4 ancilla rotations merged
      link_rotation(kX, kPi4, all),
      link_rotation(kY, kPi4, all),
      {PulseKind::CollisionAB, {}, kPi4, {slots[3]}},
      {PulseKind::CollisionAB, {}, kPi4, {slots[2]}},
      {PulseKind::CollisionAB, {}, kPi4, {slots[1]}},
      {PulseKind::CollisionAB, {}, kPi4, {slots[0]}},
      link_rotation(kY, -kPi4, all),
  };
  return seq;
}

AtomicSequence compile_plaquette_entangler(const LatticeGeometry& g, Plaquette p) {
  auto links = g.plaquetteLinks(p);
  return compile_plaquette_entangler({g.linkIndex(links[0]), g.linkIndex(links[1]),
                                      g.linkIndex(links[2]), g.linkIndex(links[3])});
}

AtomicSequence compile_link_interaction(int psiMode, int chiMode, double lambdaGM, double tau) {
  AtomicSequence seq;
  seq.compiles = "link_interaction";
  seq.pulses = {
      control_rotation(kY, -kPi4),
      {PulseKind::CollisionBPsi, {}, pi, {psiMode}},
      {PulseKind::Tunneling, {}, lambdaGM * tau, {psiMode, chiMode}},
      control_rotation(kY, pi / 2.0),
      {PulseKind::CollisionBPsi, {}, pi, {psiMode}},
      control_rotation(kY, -kPi4),
  };
  return seq;
}

AtomicSequence compile_link_interaction(const LatticeGeometry& g, Link l, double lambdaGM,
                                        double tau) {
  return compile_link_interaction(g.siteIndex(l.origin), g.siteIndex(g.linkHead(l)), lambdaGM,
                                  tau);
}

namespace {

const char* kind_name(PulseKind k) {
  switch (k) {
    case PulseKind::LinkRotation: return "linkRotation";
    case PulseKind::ControlRotation: return "controlRotation";
    case PulseKind::CollisionAB: return "collisionAB";
    case PulseKind::CollisionBPsi: return "collisionBPsi";
    case PulseKind::Tunneling: return "tunneling";
  }
  return "?";
}

PulseKind kind_from_name(const std::string& name) {
  if (name == "linkRotation") return PulseKind::LinkRotation;
  if (name == "controlRotation") return PulseKind::ControlRotation;
  if (name == "collisionAB") return PulseKind::CollisionAB;
  if (name == "collisionBPsi") return PulseKind::CollisionBPsi;
  if (name == "tunneling") return PulseKind::Tunneling;
  throw ConfigError("ConfigError: unknown pulse kind " + name);
}

}  // namespace

std::string sequence_to_json(const AtomicSequence& seq) {
  json out;
  out["compiles"] = seq.compiles;
  out["pulses"] = json::array();
  for (const Pulse& p : seq.pulses) {
    out["pulses"].push_back({{"kind", kind_name(p.kind)},
                             {"axis", {p.axis.x(), p.axis.y(), p.axis.z()}},
                             {"angle", p.angle},
                             {"targets", p.targets}});
  }
  return out.dump(2);
}

AtomicSequence sequence_from_json(const std::string& text) {
  json in = json::parse(text);
  AtomicSequence seq;
  seq.compiles = in.value("compiles", "");
  for (const json& jp : in.at("pulses")) {
    Pulse p;
    p.kind = kind_from_name(jp.at("kind").get<std::string>());
    auto axis = jp.at("axis");
    p.axis = Eigen::Vector3d(axis.at(0).get<double>(), axis.at(1).get<double>(),
                             axis.at(2).get<double>());
    p.angle = jp.at("angle").get<double>();
    p.targets = jp.at("targets").get<std::vector<int>>();
    seq.pulses.push_back(std::move(p));
  }
  return seq;
}

Eigen::MatrixXcd dense_unitary(const RegisterLayout& layout,
                               const std::function<void(StateVector&)>& op) {
  const std::int64_t dim = layout.dim();
  if (dim > (std::int64_t(1) << 12)) throw TooLargeError("TooLarge: dense probing needs D <= 2^12");
  Eigen::MatrixXcd u(dim, dim);
  for (std::int64_t k = 0; k < dim; ++k) {
    StateVector s(layout);
    s.amplitudes()(k) = 1.0;
    op(s);
    u.col(k) = s.amplitudes();
  }
  return u;
}

Eigen::MatrixXcd dense_routine_on_physical(const RegisterLayout& physical,
                                           const std::function<void(StateVector&)>& routine) {
  RegisterLayout full(physical.groupOrder, physical.numLinks, physical.numModes, 1);
  const std::int64_t physDim = physical.dim();
  if (physDim > (std::int64_t(1) << 12)) {
    throw TooLargeError("TooLarge: dense probing needs D <= 2^12");
  }
  const int n = full.groupOrder;
  const std::int64_t stride = full.quditStride(full.ancillaSlot());
  const Eigen::VectorXcd in = ancilla_in_state(n);
  Eigen::MatrixXcd u(physDim, physDim);
  for (std::int64_t k = 0; k < physDim; ++k) {
    StateVector s(full);
    for (int m = 0; m < n; ++m) s.amplitudes()(k + m * stride) = in(m);
    routine(s);
    for (std::int64_t r = 0; r < physDim; ++r) {
      cd acc = 0.0;
      for (int m = 0; m < n; ++m) acc += std::conj(in(m)) * s.amplitudes()(r + m * stride);
      u(r, k) = acc;
    }
  }
  return u;
}

double unitary_distance_up_to_phase(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  const cd overlap = (v.adjoint() * u).trace();
  const cd phase = overlap == cd(0.0) ? cd(1.0) : overlap / std::abs(overlap);
  return (u - phase * v).cwiseAbs().maxCoeff();
}

CompiledCheck verify_compiled(const AtomicSequence& seq, const RegisterLayout& layout,
                              const Eigen::MatrixXcd& target) {
  Eigen::MatrixXcd compiled =
      dense_unitary(layout, [&](StateVector& s) { apply_sequence(s, seq); });
  CompiledCheck check;
  const cd overlap = (target.adjoint() * compiled).trace();
  check.globalPhase = std::arg(overlap);
  check.distance = unitary_distance_up_to_phase(compiled, target);
  return check;
}

NumberPhases measure_compiled_gm_phases(double lambdaGM, double tau) {
  // Minimal layout: psi = mode 0, chi = mode 1, one link, plus the ancilla.
  RegisterLayout physical(2, 1, 2, 0);
  Eigen::MatrixXcd compiled = dense_routine_on_physical(physical, [&](StateVector& s) {
    atomic_gauge_matter_routine(s, 0, 0, 1, lambdaGM, tau);
  });
  Eigen::MatrixXcd ideal = dense_routine_on_physical(physical, [&](StateVector& s) {
    gauge_matter_routine_slots(s, 0, 0, 1, lambdaGM, tau);
  });

  // compiled = g e^{-i phi'' n_psi} ideal e^{-i phi' n_psi}. Ratios:
  //   empty diagonal element -> g
  //   element losing the psi fermion  -> g e^{-i phi'}
  //   element gaining the psi fermion -> g e^{-i phi''}
  const std::int64_t empty = 0;
  const std::int64_t psiOcc = 1, chiOccLinkUp = 2 + 4;
  const cd g = compiled(empty, empty) / ideal(empty, empty);
  NumberPhases phases;
  const cd losing = ideal(chiOccLinkUp, psiOcc);
  const cd gaining = ideal(psiOcc, chiOccLinkUp);
  if (std::abs(losing) > 1e-8 && std::abs(gaining) > 1e-8) {
    phases.before = -std::arg(compiled(chiOccLinkUp, psiOcc) / (g * losing));
    phases.after = -std::arg(compiled(psiOcc, chiOccLinkUp) / (g * gaining));
  } else {
    // tunneling angle too small to separate the two phases; only the sum acts
    phases.before = -std::arg(compiled(psiOcc, psiOcc) / (g * ideal(psiOcc, psiOcc)));
    phases.after = 0.0;
  }
  return phases;
}

void atomic_gauge_matter_routine(StateVector& s, int linkSlot, int psiMode, int chiMode,
                                 double lambdaGM, double tau, const NumberPhases& compensate) {
  if (compensate.before != 0.0) apply_number_phase(s, psiMode, -compensate.before);
  const AtomicSequence entangler = compile_link_entangler(linkSlot);
  apply_sequence(s, entangler);
  apply_sequence(s, compile_link_interaction(psiMode, chiMode, lambdaGM, tau));
  apply_sequence(s, entangler);  // U^dag = U for Z_2, up to a global phase
  if (compensate.after != 0.0) apply_number_phase(s, psiMode, -compensate.after);
}

StepReport atomic_trotter_step(StateVector& s, const LatticeGeometry& g, const TrotterPlan& plan,
                               bool compensate) {
  require_z2(s);
  const CouplingSet& c = plan.couplings;
  NumberPhases phases;
  if (compensate) phases = measure_compiled_gm_phases(c.lambdaGM, plan.tau);

  auto gm_class = [&](LinkClass cls) {
    for (const Link& l : g.linksByClass(cls)) {
      atomic_gauge_matter_routine(s, g.linkIndex(l), g.siteIndex(l.origin),
                                  g.siteIndex(g.linkHead(l)), c.lambdaGM, plan.tau, phases);
    }
  };
  auto b_parity = [&](Parity parity) {
    for (const Plaquette& p : g.plaquettesByParity(parity)) {
      const AtomicSequence entangler = compile_plaquette_entangler(g, p);
      apply_sequence(s, entangler);
      apply_pulse(s, control_rotation(kX, 2.0 * c.lambdaB * plan.tau));  // V~_B
      apply_sequence(s, entangler);
    }
  };

  for (SubStep step : kSubStepOrder) {
    switch (step) {
      case SubStep::GmEvenVertical: gm_class(LinkClass::EvenVertical); break;
      case SubStep::GmEvenHorizontal: gm_class(LinkClass::EvenHorizontal); break;
      case SubStep::MagneticEven: b_parity(Parity::Even); break;
      case SubStep::GmOddVertical: gm_class(LinkClass::OddVertical); break;
      case SubStep::GmOddHorizontal: gm_class(LinkClass::OddHorizontal); break;
      case SubStep::MagneticOdd: b_parity(Parity::Odd); break;
      case SubStep::Electric: {
        // W_E = V_z^dag(2 tau lambdaE), global phase apart from e^{-i H_E tau}
        std::vector<int> all(g.numLinks());
        for (int l = 0; l < g.numLinks(); ++l) all[l] = l;
        apply_pulse(s, link_rotation(kZ, -2.0 * plan.tau * c.lambdaE, all));
        break;
      }
      case SubStep::Mass: w_M(s, g, c.mass, plan.tau); break;
    }
  }
  StepReport report;
  report.ancillaDefect = s.layout().ancillaCount == 1 ? ancilla_return_check(s) : 0.0;
  report.normDrift = std::abs(s.norm() - 1.0);
  return report;
}

}  // namespace znsim

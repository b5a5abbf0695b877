#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "znsim/lattice.hpp"
#include "znsim/protocol.hpp"
#include "znsim/state.hpp"
#include "znsim/stator.hpp"

namespace znsim {

// Z_2-only pulse layer. Every request on a register with N != 2 fails loudly.

enum class PulseKind {
  LinkRotation,     // V_n(phi) = e^{-i phi n.sigma} on each target link
  ControlRotation,  // V~_n(phi) on the ancilla
  CollisionAB,      // U_ab(phi) = e^{-i phi sigma_z sigma~_z}, targets = {link}
  CollisionBPsi,    // U_bpsi(phi): diag(1, e^{-i phi}) on the ancilla when the mode is occupied
  Tunneling,        // e^{-i phi (c_i^dag c_j + h.c.)}, targets = {i, j}
};

struct Pulse {
  PulseKind kind = PulseKind::LinkRotation;
  Eigen::Vector3d axis = Eigen::Vector3d::Zero();  // unit vector, rotations only
  double angle = 0.0;
  std::vector<int> targets;
};

// Pulses stored in application order (first entry acts first).
struct AtomicSequence {
  std::vector<Pulse> pulses;
  std::string compiles;  // which abstract unitary this claims to build
};

void apply_pulse(StateVector& s, const Pulse& p);
void apply_sequence(StateVector& s, const AtomicSequence& seq);

// Five-pulse compilation of the link entangler (self-adjoint for Z_2, so the
// same sequence also undoes the stator, up to a global phase).
AtomicSequence compile_link_entangler(int linkSlot);
AtomicSequence compile_link_entangler(const LatticeGeometry& g, Link l);

// Shared-step compilation of the plaquette entangler: 8 pulses. The shared
// ancilla rotation must accumulate the full per-link angle (4 x pi/4); a
// single pi/4 leaves a stray ancilla z-rotation behind.
AtomicSequence compile_plaquette_entangler(const std::array<int, 4>& slots);
AtomicSequence compile_plaquette_entangler(const LatticeGeometry& g, Plaquette p);

// Six-pulse compilation of the on-link gauge-matter sandwich; acting between
// two entangler applications it reproduces the abstract routine up to
// measured number phases on the psi mode.
AtomicSequence compile_link_interaction(int psiMode, int chiMode, double lambdaGM, double tau);
AtomicSequence compile_link_interaction(const LatticeGeometry& g, Link l, double lambdaGM,
                                        double tau);

std::string sequence_to_json(const AtomicSequence& seq);
AtomicSequence sequence_from_json(const std::string& text);

// Dense unitary of an in-place operation, by basis probing. D <= 2^12.
Eigen::MatrixXcd dense_unitary(const RegisterLayout& layout,
                               const std::function<void(StateVector&)>& op);

// Physical-register matrix of an ancilla-mediated routine: embed each physical
// basis state with the ancilla in |in~>, run, project the ancilla back onto
// |in~>. Faithful when the routine disentangles the ancilla.
Eigen::MatrixXcd dense_routine_on_physical(const RegisterLayout& physical,
                                           const std::function<void(StateVector&)>& routine);

// min over a global phase of the entrywise max distance ||U - e^{i th} V||.
double unitary_distance_up_to_phase(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v);

struct CompiledCheck {
  double distance = 0.0;       // after phase fitting
  double globalPhase = 0.0;    // fitted
  NumberPhases numberPhases;   // fitted, when the target allows them
};

// Compiled sequence against a dense target unitary on the same layout,
// up to a global phase only.
CompiledCheck verify_compiled(const AtomicSequence& seq, const RegisterLayout& layout,
                              const Eigen::MatrixXcd& target);

// Number phases of the fully compiled gauge-matter routine, measured on a
// minimal two-site/one-link layout by probing occupation basis states.
NumberPhases measure_compiled_gm_phases(double lambdaGM, double tau);

// The compiled gauge-matter routine: entangler, sandwich, entangler again.
void atomic_gauge_matter_routine(StateVector& s, int linkSlot, int psiMode, int chiMode,
                                 double lambdaGM, double tau,
                                 const NumberPhases& compensate = {});

// Full stroboscopic step built from compiled pulses. When compensate is set,
// the measured number phases of the gauge-matter routine are undone.
StepReport atomic_trotter_step(StateVector& s, const LatticeGeometry& g, const TrotterPlan& plan,
                               bool compensate = true);

}  // namespace znsim

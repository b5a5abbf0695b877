#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "znsim/atomic.hpp"
#include "znsim/errors.hpp"

using namespace znsim;
using ts::Mat;
using ts::cd;

namespace {

const Eigen::Vector3d kX{1, 0, 0}, kY{0, 1, 0}, kZ{0, 0, 1};

Mat gm_target(double lambdaGM, double tau) {
  Mat c0 = ts::jw_annihilator(0, 2), c1 = ts::jw_annihilator(1, 2);
  Mat term = ts::kron(ts::pauli_x(), (c0.adjoint() * c1).eval());
  term *= lambdaGM;
  return ts::exp_mih((term + term.adjoint()).eval(), tau);
}

}  // namespace

TEST_CASE("single pulses") {
  RegisterLayout l(2, 1, 0, 1);
  std::vector<int> links = {0};
  StateVector s = basis_state(l, 0, links, {});

  // V_z(pi/2) on |0>: phase e^{-i pi/2}
  Pulse vz{PulseKind::LinkRotation, kZ, M_PI / 2, {0}};
  apply_pulse(s, vz);
  CHECK(std::abs(s.amplitudes()(0) - cd(0, -1)) < 1e-14);

  // V_n(phi) V_n(-phi) = 1
  std::mt19937_64 rng(127);
  StateVector r = random_state(l, rng);
  StateVector r0 = r;
  Pulse vx{PulseKind::LinkRotation, kX, 0.6, {0}};
  Pulse vxInv{PulseKind::LinkRotation, kX, -0.6, {0}};
  apply_pulse(r, vx);
  apply_pulse(r, vxInv);
  CHECK((r.amplitudes() - r0.amplitudes()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("collision phases") {
  RegisterLayout l(2, 1, 0, 1);
  std::vector<int> links = {0};
  // |0> |0~>: e^{-i pi/4}
  StateVector s00 = basis_state(l, 0, links, {});
  apply_pulse(s00, Pulse{PulseKind::CollisionAB, {}, M_PI / 4, {0}});
  CHECK(std::abs(s00.amplitudes()(0) - std::exp(cd(0, -M_PI / 4))) < 1e-14);
  // |0> |1~>: e^{+i pi/4}
  StateVector s01 = basis_state(l, 1, links, {});
  apply_pulse(s01, Pulse{PulseKind::CollisionAB, {}, M_PI / 4, {0}});
  CHECK(std::abs(s01.amplitudes()(2) - std::exp(cd(0, M_PI / 4))) < 1e-14);
  // joint flip of both values restores the phase
  links = {1};
  StateVector s10 = basis_state(l, 0, links, {});
  StateVector s11 = basis_state(l, 1, links, {});
  apply_pulse(s10, Pulse{PulseKind::CollisionAB, {}, M_PI / 4, {0}});
  apply_pulse(s11, Pulse{PulseKind::CollisionAB, {}, M_PI / 4, {0}});
  CHECK(std::abs(s10.amplitudes()(1) - std::exp(cd(0, M_PI / 4))) < 1e-14);
  CHECK(std::abs(s11.amplitudes()(3) - std::exp(cd(0, -M_PI / 4))) < 1e-14);
}

TEST_CASE("fermion-control collision") {
  RegisterLayout l(2, 0, 1, 1);
  // unoccupied mode: identity
  std::vector<int> occ = {0};
  StateVector s = basis_state(l, 1, {}, occ);
  apply_pulse(s, Pulse{PulseKind::CollisionBPsi, {}, M_PI, {0}});
  CHECK(std::abs(s.amplitudes()(2) - 1.0) < 1e-14);
  // occupied, phi = pi: ancilla |1~> picks -1 relative to |0~>
  occ = {1};
  StateVector up = basis_state(l, 1, {}, occ);
  apply_pulse(up, Pulse{PulseKind::CollisionBPsi, {}, M_PI, {0}});
  CHECK(std::abs(up.amplitudes()(3) + 1.0) < 1e-14);
  StateVector down = basis_state(l, 0, {}, occ);
  apply_pulse(down, Pulse{PulseKind::CollisionBPsi, {}, M_PI, {0}});
  CHECK(std::abs(down.amplitudes()(1) - 1.0) < 1e-14);
}

TEST_CASE("pulses demand Z_2 registers") {
  RegisterLayout l(3, 1, 0, 1);
  StateVector s(l);
  s.amplitudes()(0) = 1.0;
  CHECK_THROWS_AS(apply_pulse(s, Pulse{PulseKind::LinkRotation, kX, 0.3, {0}}),
                  WrongGroupOrderError);
}

TEST_CASE("compiled link entangler") {
  RegisterLayout l(2, 1, 0, 1);
  AtomicSequence seq = compile_link_entangler(0);
  CHECK(seq.pulses.size() == 5);
  Mat compiled = dense_unitary(l, [&](StateVector& s) { apply_sequence(s, seq); });
  Mat abstract = dense_unitary(l, [](StateVector& s) { apply_slot_entangler(s, 0); });
  CHECK((compiled * compiled.adjoint() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(unitary_distance_up_to_phase(compiled, abstract) < 1e-12);
  // applying it twice is the identity up to a global phase (Z_2 involution)
  CHECK(unitary_distance_up_to_phase((compiled * compiled).eval(), Mat::Identity(4, 4)) < 1e-12);

  CompiledCheck check = verify_compiled(seq, l, abstract);
  CHECK(check.distance < 1e-12);
}

TEST_CASE("perturbed angle is caught (negative control)") {
  RegisterLayout l(2, 1, 0, 1);
  AtomicSequence seq = compile_link_entangler(0);
  seq.pulses[3].angle += 0.01;
  Mat abstract = dense_unitary(l, [](StateVector& s) { apply_slot_entangler(s, 0); });
  CHECK(verify_compiled(seq, l, abstract).distance > 1e-3);
}

TEST_CASE("compiled plaquette entangler") {
  RegisterLayout l(2, 4, 0, 1);
  AtomicSequence seq = compile_plaquette_entangler({0, 1, 2, 3});
  CHECK(seq.pulses.size() == 8);
  Mat compiled = dense_unitary(l, [&](StateVector& s) { apply_sequence(s, seq); });
  Mat abstract =
      dense_unitary(l, [](StateVector& s) { apply_slot_plaquette_entangler(s, {0, 1, 2, 3}); });
  CHECK(unitary_distance_up_to_phase(compiled, abstract) < 1e-11);
}

TEST_CASE("compiled link interaction sandwich") {
  const double lambdaGM = 0.9, tau = 0.27;
  RegisterLayout phys(2, 1, 2, 0);
  NumberPhases phases = measure_compiled_gm_phases(lambdaGM, tau);
  Mat routine = dense_routine_on_physical(phys, [&](StateVector& s) {
    atomic_gauge_matter_routine(s, 0, 0, 1, lambdaGM, tau, phases);
  });
  CHECK(unitary_distance_up_to_phase(routine, gm_target(lambdaGM, tau)) < 1e-10);

  // tau = 0: identity up to number phases
  NumberPhases zeroPhases = measure_compiled_gm_phases(lambdaGM, 0.0);
  Mat idRoutine = dense_routine_on_physical(phys, [&](StateVector& s) {
    atomic_gauge_matter_routine(s, 0, 0, 1, lambdaGM, 0.0, zeroPhases);
  });
  CHECK(unitary_distance_up_to_phase(idRoutine, Mat::Identity(8, 8)) < 1e-10);
}

TEST_CASE("compiled trotter step matches the abstract one") {
  LatticeGeometry g(2, 2);
  CouplingSet c{1.0, 1.0, 1.0, 1.0, 2};
  TrotterPlan plan(c, 0.12, 1);
  StateVector a = dirac_sea(g, 2, true);
  StateVector b = a;
  trotter_step(a, g, plan);
  atomic_trotter_step(b, g, plan, /*compensate=*/true);
  CHECK(fidelity_up_to_phase(a, b) > 1.0 - 1e-9);
}

TEST_CASE("sequence JSON round trip") {
  AtomicSequence seq = compile_link_interaction(0, 1, 0.7, 0.3);
  std::string text = sequence_to_json(seq);
  AtomicSequence back = sequence_from_json(text);
  CHECK(back.compiles == seq.compiles);
  REQUIRE(back.pulses.size() == seq.pulses.size());
  for (std::size_t i = 0; i < seq.pulses.size(); ++i) {
    CHECK(back.pulses[i].kind == seq.pulses[i].kind);
    CHECK(back.pulses[i].angle == seq.pulses[i].angle);
    CHECK(back.pulses[i].targets == seq.pulses[i].targets);
    CHECK((back.pulses[i].axis - seq.pulses[i].axis).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("every compiled sequence is unitary") {
  RegisterLayout l(2, 4, 2, 1);
  std::mt19937_64 rng(131);
  for (const AtomicSequence& seq :
       {compile_link_entangler(0), compile_plaquette_entangler({0, 1, 2, 3}),
        compile_link_interaction(0, 1, 0.8, 0.4)}) {
    StateVector s = random_state(l, rng);
    apply_sequence(s, seq);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
  }
}

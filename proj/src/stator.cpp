#include "znsim/stator.hpp"

#include <cmath>
#include <complex>

#include "znsim/algebra.hpp"

namespace znsim {

using cd = std::complex<double>;

namespace {
constexpr double kAncillaReadyTol = 1e-10;

void require_ancilla_ready(const StateVector& s) {
  if (ancilla_return_check(s) > kAncillaReadyTol) {
    throw AncillaNotReadyError("AncillaNotReady: ancilla is not in |in~> before routine");
  }
}
}  // namespace

Eigen::MatrixXcd link_entangler_gate(int groupOrder, bool dagger) {
  const int n = groupOrder;
  const Eigen::MatrixXcd q = shift_q(n);
  Eigen::MatrixXcd gate = Eigen::MatrixXcd::Zero(n * n, n * n);
  Eigen::MatrixXcd qm = Eigen::MatrixXcd::Identity(n, n);
  for (int m = 0; m < n; ++m) {
    // ancilla digit m is the most significant index block
    gate.block(m * n, m * n, n, n) = dagger ? Eigen::MatrixXcd(qm.adjoint()) : qm;
    qm = q * qm;
  }
  return gate;
}

void apply_slot_entangler(StateVector& s, int linkSlot, bool dagger) {
  if (s.layout().ancillaCount == 0) throw NoAncillaError("NoAncilla: entangler needs an ancilla");
  const std::array<int, 2> slots = {s.layout().ancillaSlot(), linkSlot};
  apply_qudit_gate(s, slots, link_entangler_gate(s.layout().groupOrder, dagger));
}

void apply_slot_plaquette_entangler(StateVector& s, const std::array<int, 4>& slots, bool dagger) {
  // U_box = U_1 U_2 U_3^dag U_4^dag; the adjoint reverses order and daggers.
  if (!dagger) {
    apply_slot_entangler(s, slots[3], true);
    apply_slot_entangler(s, slots[2], true);
    apply_slot_entangler(s, slots[1], false);
    apply_slot_entangler(s, slots[0], false);
  } else {
    apply_slot_entangler(s, slots[0], true);
    apply_slot_entangler(s, slots[1], true);
    apply_slot_entangler(s, slots[2], false);
    apply_slot_entangler(s, slots[3], false);
  }
}

namespace {
std::array<int, 4> plaquette_slots(const LatticeGeometry& g, Plaquette p) {
  auto links = g.plaquetteLinks(p);
  return {g.linkIndex(links[0]), g.linkIndex(links[1]), g.linkIndex(links[2]),
          g.linkIndex(links[3])};
}
}  // namespace

void apply_link_entangler(StateVector& s, const LatticeGeometry& g, Link l, bool dagger) {
  apply_slot_entangler(s, g.linkIndex(l), dagger);
}

void apply_plaquette_entangler(StateVector& s, const LatticeGeometry& g, Plaquette p,
                               bool dagger) {
  apply_slot_plaquette_entangler(s, plaquette_slots(g, p), dagger);
}

void apply_VB(StateVector& s, double lambdaB, double tau) {
  if (s.layout().ancillaCount == 0) throw NoAncillaError("NoAncilla: V_B acts on the ancilla");
  const int n = s.layout().groupOrder;
  const Eigen::MatrixXcd q = shift_q(n);
  const Eigen::MatrixXcd gate = exp_minus_i_hermitian((q + q.adjoint()).eval(), lambdaB * tau);
  const std::array<int, 1> slots = {s.layout().ancillaSlot()};
  apply_qudit_gate(s, slots, gate);
}

void plaquette_routine_slots(StateVector& s, const std::array<int, 4>& slots, double lambdaB,
                             double tau) {
  require_ancilla_ready(s);
  apply_slot_plaquette_entangler(s, slots, false);
  apply_VB(s, lambdaB, tau);
  apply_slot_plaquette_entangler(s, slots, true);
}

void plaquette_routine(StateVector& s, const LatticeGeometry& g, Plaquette p, double lambdaB,
                       double tau) {
  plaquette_routine_slots(s, plaquette_slots(g, p), lambdaB, tau);
}

void gauge_matter_routine_slots(StateVector& s, int linkSlot, int psiMode, int chiMode,
                                double lambdaGM, double tau, const NumberPhases& compensate) {
  require_ancilla_ready(s);
  const int n = s.layout().groupOrder;
  const Eigen::MatrixXcd logQdag = log_shift(n, /*dagger=*/true);

  if (compensate.before != 0.0) apply_number_phase(s, psiMode, -compensate.before);
  apply_slot_entangler(s, linkSlot, false);
  // U_W^dag = e^{-psi^dag psi log(Q~^dag)}
  apply_controlled_fermion_log(s, psiMode, (-logQdag).eval());
  apply_fermionic_exponential(s, psiMode, chiMode, lambdaGM * tau);
  apply_controlled_fermion_log(s, psiMode, logQdag);
  apply_slot_entangler(s, linkSlot, true);
  if (compensate.after != 0.0) apply_number_phase(s, psiMode, -compensate.after);
}

void gauge_matter_routine(StateVector& s, const LatticeGeometry& g, Link l, double lambdaGM,
                          double tau, const NumberPhases& compensate) {
  gauge_matter_routine_slots(s, g.linkIndex(l), g.siteIndex(l.origin),
                             g.siteIndex(g.linkHead(l)), lambdaGM, tau, compensate);
}

StateVector random_state(const RegisterLayout& layout, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXcd amps(layout.dim());
  for (Eigen::Index k = 0; k < amps.size(); ++k) amps(k) = cd(dist(rng), dist(rng));
  amps.normalize();
  return StateVector(layout, std::move(amps));
}

namespace {

// || Q~ U (|in> (x) psi) - U (|in> (x) Q_target^dag psi) || on a standalone
// layout of `numLinks` links plus the ancilla.
double eigenoperator_residual(int groupOrder, int numLinks, int trials, std::mt19937_64& rng,
                              bool plaquette, bool wrongSign) {
  RegisterLayout physical(groupOrder, numLinks, 0, 0);
  RegisterLayout full(groupOrder, numLinks, 0, 1);
  const int n = groupOrder;
  const std::int64_t physDim = physical.dim();
  const std::int64_t ancStride = full.quditStride(full.ancillaSlot());
  const Eigen::VectorXcd in = ancilla_in_state(n);
  const std::array<int, 4> slots = {0, 1, 2, 3};

  auto entangle = [&](StateVector& s) {
    if (plaquette) {
      std::array<int, 4> ordered = slots;
      apply_slot_plaquette_entangler(s, ordered, wrongSign);
    } else {
      apply_slot_entangler(s, 0, wrongSign);
    }
  };

  // Q_target^dag on the physical factor: Q^dag on the single link, or
  // Q_box^dag = Q_1^dag Q_2^dag Q_3 Q_4 on a plaquette.
  auto apply_q_target_dagger = [&](StateVector& phys) {
    const Eigen::MatrixXcd q = shift_q(n);
    const std::array<int, 1> s0 = {0};
    if (!plaquette) {
      apply_qudit_gate(phys, s0, q.adjoint().eval());
      return;
    }
    for (int a = 0; a < 4; ++a) {
      const std::array<int, 1> sa = {a};
      apply_qudit_gate(phys, sa, a < 2 ? Eigen::MatrixXcd(q.adjoint()) : q);
    }
  };

  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    StateVector psi = random_state(physical, rng);

    auto embed_with_ancilla = [&](const StateVector& phys) {
      StateVector s(full);
      for (int m = 0; m < n; ++m) {
        for (std::int64_t k = 0; k < physDim; ++k) {
          s.amplitudes()(k + m * ancStride) = in(m) * phys.amplitudes()(k);
        }
      }
      return s;
    };

    StateVector lhs = embed_with_ancilla(psi);
    entangle(lhs);
    const std::array<int, 1> anc = {full.ancillaSlot()};
    apply_qudit_gate(lhs, anc, shift_q(n));

    StateVector shifted = psi;
    apply_q_target_dagger(shifted);
    StateVector rhs = embed_with_ancilla(shifted);
    entangle(rhs);

    worst = std::max(worst, (lhs.amplitudes() - rhs.amplitudes()).norm());
  }
  return worst;
}

}  // namespace

double link_eigenoperator_residual(int groupOrder, int trials, std::mt19937_64& rng,
                                   bool wrongSign) {
  return eigenoperator_residual(groupOrder, 1, trials, rng, false, wrongSign);
}

double plaquette_eigenoperator_residual(int groupOrder, int trials, std::mt19937_64& rng,
                                        bool wrongSign) {
  return eigenoperator_residual(groupOrder, 4, trials, rng, true, wrongSign);
}

EigenoperatorReport check_eigenoperator(int groupOrder, int trials, std::mt19937_64& rng) {
  EigenoperatorReport report;
  report.maxLinkResidual = link_eigenoperator_residual(groupOrder, trials, rng);
  report.maxPlaquetteResidual = plaquette_eigenoperator_residual(groupOrder, trials, rng);
  return report;
}

}  // namespace znsim

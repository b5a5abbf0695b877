#pragma once

#include <Eigen/Dense>
#include <array>
#include <random>

#include "znsim/hamiltonian.hpp"
#include "znsim/lattice.hpp"
#include "znsim/state.hpp"

namespace znsim {

// Residual number phases e^{-i phi' n_psi}, e^{-i phi'' n_psi} flanking the
// gauge-matter sandwich. Zero in the abstract protocol; nonzero for the
// compiled pulse layer, where they are measured, not assumed.
struct NumberPhases {
  double before = 0.0;  // phi'
  double after = 0.0;   // phi''
};

// U_i = sum_m Q^m (x) |m~><m~| on (ancilla, link slot).
Eigen::MatrixXcd link_entangler_gate(int groupOrder, bool dagger);

void apply_slot_entangler(StateVector& s, int linkSlot, bool dagger = false);

// U_box = U_1 U_2 U_3^dag U_4^dag, rightmost applied first. slots[a] holds
// link a+1 in the protocol ordering.
void apply_slot_plaquette_entangler(StateVector& s, const std::array<int, 4>& slots,
                                    bool dagger = false);

void apply_link_entangler(StateVector& s, const LatticeGeometry& g, Link l, bool dagger = false);
void apply_plaquette_entangler(StateVector& s, const LatticeGeometry& g, Plaquette p,
                               bool dagger = false);

// e^{-i lambdaB tau (Q~ + Q~^dag)} on the ancilla.
void apply_VB(StateVector& s, double lambdaB, double tau);

// Net effect on the physical register: e^{-i lambdaB tau (Q_box + Q_box^dag)};
// the ancilla returns to |in~> disentangled.
void plaquette_routine_slots(StateVector& s, const std::array<int, 4>& slots, double lambdaB,
                             double tau);
void plaquette_routine(StateVector& s, const LatticeGeometry& g, Plaquette p, double lambdaB,
                       double tau);

// Stator sandwich for one link: net effect e^{-i lambdaGM (psi^dag Q chi + h.c.) tau},
// with optional compensating number phases applied around the sandwich.
void gauge_matter_routine_slots(StateVector& s, int linkSlot, int psiMode, int chiMode,
                                double lambdaGM, double tau,
                                const NumberPhases& compensate = {});
void gauge_matter_routine(StateVector& s, const LatticeGeometry& g, Link l, double lambdaGM,
                          double tau, const NumberPhases& compensate = {});

// Randomized verification of Q~ S = S Q^dag on links and plaquettes.
// wrongSign flips the entangler dagger convention (negative control).
double link_eigenoperator_residual(int groupOrder, int trials, std::mt19937_64& rng,
                                   bool wrongSign = false);
double plaquette_eigenoperator_residual(int groupOrder, int trials, std::mt19937_64& rng,
                                        bool wrongSign = false);

struct EigenoperatorReport {
  double maxLinkResidual = 0.0;
  double maxPlaquetteResidual = 0.0;
};

EigenoperatorReport check_eigenoperator(int groupOrder, int trials, std::mt19937_64& rng);

// Random normalized state for property tests.
StateVector random_state(const RegisterLayout& layout, std::mt19937_64& rng);

}  // namespace znsim

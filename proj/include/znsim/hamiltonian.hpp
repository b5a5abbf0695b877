#pragma once

#include <Eigen/Dense>

#include "znsim/lattice.hpp"
#include "znsim/state.hpp"

namespace znsim {

struct CouplingSet {
  double lambdaE = 1.0;
  double lambdaB = 1.0;
  double lambdaGM = 1.0;
  double mass = 1.0;
  int groupOrder = 2;
};

struct TermSet {
  bool electric = false;
  bool magnetic = false;
  bool mass = false;
  bool gaugeMatter = false;

  static TermSet all() { return {true, true, true, true}; }
};

// Magnetic term restriction: all plaquettes, or one parity class only.
enum class PlaquetteSelection { All, EvenOnly, OddOnly };

// Layout compatible with the geometry: numLinks = 2V, numModes = V (or 0 for
// pure-gauge layouts, in which case mass/gauge-matter terms are rejected).
void check_layout(const LatticeGeometry& g, const RegisterLayout& layout, TermSet terms);

// H s, matrix-free. The ancilla slot, if present, is untouched.
StateVector apply_H(const StateVector& s, const LatticeGeometry& g, const CouplingSet& c,
                    TermSet terms, PlaquetteSelection plaq = PlaquetteSelection::All);

// Independent dense oracle, assembled from Kronecker products of local
// operators and explicit Jordan-Wigner strings. D <= 2^14.
Eigen::MatrixXcd dense_H(const LatticeGeometry& g, const RegisterLayout& layout,
                         const CouplingSet& c, TermSet terms,
                         PlaquetteSelection plaq = PlaquetteSelection::All);

enum class EvolvePath { Auto, Dense, Krylov };

// e^{-i H t} s. Auto picks the dense eigendecomposition for D <= 2^14 and the
// matrix-free Lanczos path above.
StateVector exact_evolve(const StateVector& s, const LatticeGeometry& g, const CouplingSet& c,
                         double t, TermSet terms = TermSet::all(),
                         EvolvePath path = EvolvePath::Auto);

// Staggered charge q(x) = <n(x)> - (1 - (-1)^{x1+x2})/2.
double charge(const StateVector& s, const LatticeGeometry& g, Site x);

// Diagonal Gauss-law unitary
// G(x) = P(x,1) P(x,2) P^dag(x-1^,1) P^dag(x-2^,2) e^{-i delta q(x)}.
void gauss_apply(StateVector& s, const LatticeGeometry& g, Site x, bool dagger = false);

// max_x || (G(x) - 1) s || / ||s||
double gauss_residual(const StateVector& s, const LatticeGeometry& g);

// Ancilla |in~> (if requested), links |m=0>, fermions on odd sites.
StateVector dirac_sea(const LatticeGeometry& g, int groupOrder, bool withAncilla = true);

double energy_expectation(const StateVector& s, const LatticeGeometry& g, const CouplingSet& c,
                          TermSet terms);
double total_fermion_number(const StateVector& s);

}  // namespace znsim

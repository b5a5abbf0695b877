#pragma once

#include <array>
#include <vector>

#include "znsim/hamiltonian.hpp"
#include "znsim/lattice.hpp"
#include "znsim/state.hpp"
#include "znsim/stator.hpp"

namespace znsim {

enum class SubStep {
  GmEvenVertical,
  GmEvenHorizontal,
  MagneticEven,
  GmOddVertical,
  GmOddHorizontal,
  MagneticOdd,
  Electric,
  Mass,
};

// Applied first-to-last; matches the experimental schedule
// W_M W_E W_Bo W_oh W_ov W_Be W_eh W_ev read right-to-left.
constexpr std::array<SubStep, 8> kSubStepOrder = {
    SubStep::GmEvenVertical, SubStep::GmEvenHorizontal, SubStep::MagneticEven,
    SubStep::GmOddVertical,  SubStep::GmOddHorizontal,  SubStep::MagneticOdd,
    SubStep::Electric,       SubStep::Mass,
};

struct TrotterPlan {
  CouplingSet couplings;
  double tau = 0.1;
  int steps = 1;
  bool diagnostics = false;  // per-substep Gauss residual, O(V*D) extra per step

  TrotterPlan() = default;
  TrotterPlan(const CouplingSet& c, double t, int m) : couplings(c), tau(t), steps(m) {
    if (m < 1) throw InconsistentPlanError("InconsistentPlan: steps must be >= 1");
  }
};

struct StepReport {
  double gaussResidual = 0.0;      // max over substeps and sites (diagnostics only)
  double ancillaDefect = 0.0;      // max ancilla return defect after routines
  double normDrift = 0.0;          // | ||psi|| - 1 |
};

// Diagonal sub-steps.
void w_E(StateVector& s, const LatticeGeometry& g, double lambdaE, double tau);
void w_M(StateVector& s, const LatticeGeometry& g, double mass, double tau);

// Plaquette routines over all plaquettes of one parity (sequential ancilla reuse).
void w_B_parity(StateVector& s, const LatticeGeometry& g, Parity parity, double lambdaB,
                double tau);

// Gauge-matter routines over all links of one class.
void w_GM_class(StateVector& s, const LatticeGeometry& g, LinkClass cls, double lambdaGM,
                double tau, const NumberPhases& compensate = {});

void apply_substep(StateVector& s, const LatticeGeometry& g, SubStep step, const CouplingSet& c,
                   double tau);

StepReport trotter_step(StateVector& s, const LatticeGeometry& g, const TrotterPlan& plan);

std::vector<StepReport> trotter_evolve(StateVector& s, const LatticeGeometry& g,
                                       const TrotterPlan& plan, double totalTime);

struct ScanPoint {
  int steps = 0;
  double error = 0.0;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  double slope = 0.0;  // least-squares slope of log error vs log M
};

// error(M) = || psi_M - e^{-iHt} psi_0 || starting from the Dirac sea.
ScanResult error_scan(const LatticeGeometry& g, const CouplingSet& c, double t,
                      const std::vector<int>& stepCounts);

double fit_loglog_slope(const std::vector<ScanPoint>& points);

}  // namespace znsim

#include "znsim/protocol.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace znsim {

using cd = std::complex<double>;
using std::numbers::pi;

void w_E(StateVector& s, const LatticeGeometry& g, double lambdaE, double tau) {
  const RegisterLayout& layout = s.layout();
  const int n = layout.groupOrder;
  const double delta = 2.0 * pi / n;
  // e^{-i lambdaE tau sum_l (1 - 2 cos(delta m_l))}, constant included so this
  // is exactly e^{-i H_E tau}.
  std::vector<double> perDigit(n);
  for (int m = 0; m < n; ++m) perDigit[m] = 1.0 - 2.0 * std::cos(delta * m);
  Eigen::VectorXcd& amps = s.amplitudes();
  for (std::int64_t idx = 0; idx < layout.dim(); ++idx) {
    double phase = 0.0;
    for (int l = 0; l < layout.numLinks; ++l) phase += perDigit[layout.quditDigit(idx, l)];
    amps(idx) *= std::polar(1.0, -lambdaE * tau * phase);
  }
}

void w_M(StateVector& s, const LatticeGeometry& g, double mass, double tau) {
  const RegisterLayout& layout = s.layout();
  Eigen::VectorXcd& amps = s.amplitudes();
  for (std::int64_t idx = 0; idx < layout.dim(); ++idx) {
    double phase = 0.0;
    for (int m = 0; m < layout.numModes; ++m) {
      if (layout.modeOccupied(idx, m)) {
        phase += g.siteParity(g.site(m)) == Parity::Even ? 1.0 : -1.0;
      }
    }
    amps(idx) *= std::polar(1.0, -mass * tau * phase);
  }
}

void w_B_parity(StateVector& s, const LatticeGeometry& g, Parity parity, double lambdaB,
                double tau) {
  for (const Plaquette& p : g.plaquettesByParity(parity)) {
    plaquette_routine(s, g, p, lambdaB, tau);
  }
}

void w_GM_class(StateVector& s, const LatticeGeometry& g, LinkClass cls, double lambdaGM,
                double tau, const NumberPhases& compensate) {
  for (const Link& l : g.linksByClass(cls)) {
    gauge_matter_routine(s, g, l, lambdaGM, tau, compensate);
  }
}

void apply_substep(StateVector& s, const LatticeGeometry& g, SubStep step, const CouplingSet& c,
                   double tau) {
  switch (step) {
    case SubStep::GmEvenVertical: w_GM_class(s, g, LinkClass::EvenVertical, c.lambdaGM, tau); break;
    case SubStep::GmEvenHorizontal:
      w_GM_class(s, g, LinkClass::EvenHorizontal, c.lambdaGM, tau);
      break;
    case SubStep::MagneticEven: w_B_parity(s, g, Parity::Even, c.lambdaB, tau); break;
    case SubStep::GmOddVertical: w_GM_class(s, g, LinkClass::OddVertical, c.lambdaGM, tau); break;
    case SubStep::GmOddHorizontal:
      w_GM_class(s, g, LinkClass::OddHorizontal, c.lambdaGM, tau);
      break;
    case SubStep::MagneticOdd: w_B_parity(s, g, Parity::Odd, c.lambdaB, tau); break;
    case SubStep::Electric: w_E(s, g, c.lambdaE, tau); break;
    case SubStep::Mass: w_M(s, g, c.mass, tau); break;
  }
}

StepReport trotter_step(StateVector& s, const LatticeGeometry& g, const TrotterPlan& plan) {
  StepReport report;
  for (SubStep step : kSubStepOrder) {
    apply_substep(s, g, step, plan.couplings, plan.tau);
    if (plan.diagnostics) {
      report.gaussResidual = std::max(report.gaussResidual, gauss_residual(s, g));
      if (s.layout().ancillaCount == 1) {
        report.ancillaDefect = std::max(report.ancillaDefect, ancilla_return_check(s));
      }
    }
  }
  report.normDrift = std::abs(s.norm() - 1.0);
  return report;
}

std::vector<StepReport> trotter_evolve(StateVector& s, const LatticeGeometry& g,
                                       const TrotterPlan& plan, double totalTime) {
  if (std::abs(plan.tau * plan.steps - totalTime) > 1e-12 * std::max(1.0, std::abs(totalTime))) {
    throw InconsistentPlanError("InconsistentPlan: tau * steps != t");
  }
  std::vector<StepReport> reports;
  reports.reserve(plan.steps);
  for (int k = 0; k < plan.steps; ++k) reports.push_back(trotter_step(s, g, plan));
  return reports;
}

double fit_loglog_slope(const std::vector<ScanPoint>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const ScanPoint& p : points) {
    if (p.error <= 0.0) continue;
    const double x = std::log(double(p.steps)), y = std::log(p.error);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScanResult error_scan(const LatticeGeometry& g, const CouplingSet& c, double t,
                      const std::vector<int>& stepCounts) {
  StateVector initial = dirac_sea(g, c.groupOrder, /*withAncilla=*/true);
  StateVector reference = exact_evolve(initial, g, c, t, TermSet::all(), EvolvePath::Krylov);
  ScanResult result;
  for (int m : stepCounts) {
    StateVector psi = initial;
    TrotterPlan plan(c, t / m, m);
    trotter_evolve(psi, g, plan, t);
    result.points.push_back({m, (psi.amplitudes() - reference.amplitudes()).norm()});
  }
  result.slope = fit_loglog_slope(result.points);
  return result;
}

}  // namespace znsim

#include "znsim/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>

#include "znsim/algebra.hpp"
#include "znsim/krylov.hpp"

namespace znsim {

using cd = std::complex<double>;
using std::numbers::pi;

namespace {

bool plaquette_selected(const LatticeGeometry& g, Plaquette p, PlaquetteSelection sel) {
  switch (sel) {
    case PlaquetteSelection::All: return true;
    case PlaquetteSelection::EvenOnly: return g.plaquetteParity(p) == Parity::Even;
    case PlaquetteSelection::OddOnly: return g.plaquetteParity(p) == Parity::Odd;
  }
  return true;
}

int stagger_offset(const LatticeGeometry& g, Site x) {
  return g.siteParity(x) == Parity::Even ? 0 : 1;
}

double jw_sign(std::int64_t idx, int i, int j) {
  const int lo = std::min(i, j), hi = std::max(i, j);
  const std::int64_t mask =
      ((std::int64_t(1) << hi) - 1) & ~((std::int64_t(1) << (lo + 1)) - 1);
  return std::popcount(std::uint64_t(idx & mask)) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

void check_layout(const LatticeGeometry& g, const RegisterLayout& layout, TermSet terms) {
  if (layout.numLinks != g.numLinks()) {
    throw LayoutMismatchError("LayoutMismatch: link count does not match geometry");
  }
  const bool needFermions = terms.mass || terms.gaugeMatter;
  if (layout.numModes != g.numSites() && !(layout.numModes == 0 && !needFermions)) {
    throw LayoutMismatchError("LayoutMismatch: mode count does not match geometry");
  }
}

StateVector apply_H(const StateVector& s, const LatticeGeometry& g, const CouplingSet& c,
                    TermSet terms, PlaquetteSelection plaq) {
  const RegisterLayout& layout = s.layout();
  check_layout(g, layout, terms);
  if (layout.groupOrder != c.groupOrder) {
    throw LayoutMismatchError("LayoutMismatch: group order");
  }
  const int n = layout.groupOrder;
  const double delta = 2.0 * pi / n;
  const std::int64_t dim = layout.dim();
  const Eigen::VectorXcd& in = s.amplitudes();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);

  if (terms.electric || terms.mass) {
    for (std::int64_t idx = 0; idx < dim; ++idx) {
      double diag = 0.0;
      if (terms.electric) {
        for (int l = 0; l < layout.numLinks; ++l) {
          diag += c.lambdaE * (1.0 - 2.0 * std::cos(delta * layout.quditDigit(idx, l)));
        }
      }
      if (terms.mass) {
        for (int m = 0; m < layout.numModes; ++m) {
          if (layout.modeOccupied(idx, m)) {
            diag += c.mass * (g.siteParity(g.site(m)) == Parity::Even ? 1.0 : -1.0);
          }
        }
      }
      out(idx) += diag * in(idx);
    }
  }

  if (terms.magnetic) {
    for (const Plaquette& p : g.plaquettes()) {
      if (!plaquette_selected(g, p, plaq)) continue;
      auto links = g.plaquetteLinks(p);
      std::array<std::int64_t, 4> stride{};
      for (int a = 0; a < 4; ++a) stride[a] = layout.quditStride(g.linkIndex(links[a]));
      // Q_box raises links 1,2 and lowers links 3,4; plus Hermitian conjugate.
      for (int dir : {+1, -1}) {
        for (std::int64_t idx = 0; idx < dim; ++idx) {
          std::int64_t target = idx;
          for (int a = 0; a < 4; ++a) {
            const int d = int((idx / stride[a]) % n);
            const int shift = (a < 2) ? dir : -dir;
            target += std::int64_t(((d + shift) % n + n) % n - d) * stride[a];
          }
          out(target) += c.lambdaB * in(idx);
        }
      }
    }
  }

  if (terms.gaugeMatter) {
    for (const Link& l : g.links()) {
      const int i = g.siteIndex(l.origin);       // psi
      const int j = g.siteIndex(g.linkHead(l));  // chi
      const std::int64_t stride = layout.quditStride(g.linkIndex(l));
      const std::int64_t flip = (std::int64_t(1) << i) | (std::int64_t(1) << j);
      for (std::int64_t idx = 0; idx < dim; ++idx) {
        const bool ni = layout.modeOccupied(idx, i);
        const bool nj = layout.modeOccupied(idx, j);
        if (ni == nj) continue;
        const double sign = jw_sign(idx, i, j);
        const int d = int((idx / stride) % n);
        std::int64_t target;
        if (!ni) {
          // psi^dag Q chi: move the fermion j -> i, raise the link
          target = (idx ^ flip) + std::int64_t((d + 1) % n - d) * stride;
        } else {
          // chi^dag Q^dag psi
          target = (idx ^ flip) + std::int64_t((d + n - 1) % n - d) * stride;
        }
        out(target) += c.lambdaGM * sign * in(idx);
      }
    }
  }

  return StateVector(layout, std::move(out));
}

namespace {

Eigen::MatrixXcd kron2(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

// Embed per-slot qudit operators (identity elsewhere) with a given dense
// operator on the whole fermionic factor.
Eigen::MatrixXcd embed(const RegisterLayout& layout,
                       const std::vector<std::pair<int, Eigen::MatrixXcd>>& linkOps,
                       const Eigen::MatrixXcd& fermionOp) {
  const int n = layout.groupOrder;
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(1, 1);
  if (layout.ancillaCount == 1) full = Eigen::MatrixXcd::Identity(n, n);
  for (int l = layout.numLinks - 1; l >= 0; --l) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(n, n);
    for (const auto& [slot, mat] : linkOps) {
      if (slot == l) op = mat * op;
    }
    full = kron2(full, op);
  }
  return kron2(full, fermionOp);
}

// Dense Jordan-Wigner annihilator for mode i of K modes (mode 0 least
// significant): c_i = I (x) sigma^- (x) Z^{(x) i}.
Eigen::MatrixXcd dense_annihilator(int numModes, int i) {
  Eigen::MatrixXcd z(2, 2), sm(2, 2), id2 = Eigen::MatrixXcd::Identity(2, 2);
  z << 1, 0, 0, -1;
  sm << 0, 1, 0, 0;  // |0><1|
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1, 1);
  for (int m = numModes - 1; m >= 0; --m) {
    if (m > i) op = kron2(op, id2);
    else if (m == i) op = kron2(op, sm);
    else op = kron2(op, z);
  }
  return op;
}

}  // namespace

Eigen::MatrixXcd dense_H(const LatticeGeometry& g, const RegisterLayout& layout,
                         const CouplingSet& c, TermSet terms, PlaquetteSelection plaq) {
  check_layout(g, layout, terms);
  const std::int64_t dim = layout.dim();
  if (dim > (std::int64_t(1) << 14)) throw TooLargeError("TooLarge: dense_H needs D <= 2^14");
  const int n = layout.groupOrder;
  const Eigen::MatrixXcd p = clock_p(n);
  const Eigen::MatrixXcd q = shift_q(n);
  const Eigen::MatrixXcd idn = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd idf = Eigen::MatrixXcd::Identity(layout.fermionDim(), layout.fermionDim());

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

  if (terms.electric) {
    for (int l = 0; l < layout.numLinks; ++l) {
      h += c.lambdaE * embed(layout, {{l, idn - p - p.adjoint()}}, idf);
    }
  }

  if (terms.magnetic) {
    for (const Plaquette& pq : g.plaquettes()) {
      if (!plaquette_selected(g, pq, plaq)) continue;
      auto links = g.plaquetteLinks(pq);
      std::vector<std::pair<int, Eigen::MatrixXcd>> ops = {
          {g.linkIndex(links[0]), q},
          {g.linkIndex(links[1]), q},
          {g.linkIndex(links[2]), q.adjoint()},
          {g.linkIndex(links[3]), q.adjoint()}};
      Eigen::MatrixXcd term = c.lambdaB * embed(layout, ops, idf);
      h += term + term.adjoint();
    }
  }

  if (terms.mass) {
    for (int m = 0; m < layout.numModes; ++m) {
      const double sign = g.siteParity(g.site(m)) == Parity::Even ? 1.0 : -1.0;
      Eigen::MatrixXcd cm = dense_annihilator(layout.numModes, m);
      h += c.mass * sign * embed(layout, {}, (cm.adjoint() * cm).eval());
    }
  }

  if (terms.gaugeMatter) {
    for (const Link& l : g.links()) {
      const int i = g.siteIndex(l.origin);
      const int j = g.siteIndex(g.linkHead(l));
      Eigen::MatrixXcd ci = dense_annihilator(layout.numModes, i);
      Eigen::MatrixXcd cj = dense_annihilator(layout.numModes, j);
      Eigen::MatrixXcd term =
          c.lambdaGM * embed(layout, {{g.linkIndex(l), q}}, (ci.adjoint() * cj).eval());
      h += term + term.adjoint();
    }
  }

  return h;
}

StateVector exact_evolve(const StateVector& s, const LatticeGeometry& g, const CouplingSet& c,
                         double t, TermSet terms, EvolvePath path) {
  const RegisterLayout& layout = s.layout();
  check_layout(g, layout, terms);
  const std::int64_t dim = layout.dim();
  if (path == EvolvePath::Auto) {
    path = dim <= (std::int64_t(1) << 14) ? EvolvePath::Dense : EvolvePath::Krylov;
  }
  if (path == EvolvePath::Dense) {
    if (dim > (std::int64_t(1) << 14)) throw TooLargeError("TooLarge: dense path needs D <= 2^14");
    Eigen::MatrixXcd h = dense_H(g, layout, c, terms);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd coords = es.eigenvectors().adjoint() * s.amplitudes();
    for (std::int64_t k = 0; k < dim; ++k) coords(k) *= std::polar(1.0, -t * es.eigenvalues()(k));
    return StateVector(layout, es.eigenvectors() * coords);
  }
  if (dim > (std::int64_t(1) << 25)) throw TooLargeError("TooLarge: Krylov path needs D <= 2^25");
  MatVec mv = [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
    StateVector tmp(layout, x);
    y = apply_H(tmp, g, c, terms).amplitudes();
  };
  return StateVector(layout, lanczos_expmv(mv, s.amplitudes(), t, 1e-10));
}

double charge(const StateVector& s, const LatticeGeometry& g, Site x) {
  const RegisterLayout& layout = s.layout();
  const int mode = g.siteIndex(x);
  double occ = 0.0;
  const Eigen::VectorXcd& amps = s.amplitudes();
  for (std::int64_t idx = 0; idx < layout.dim(); ++idx) {
    if (layout.modeOccupied(idx, mode)) occ += std::norm(amps(idx));
  }
  occ /= amps.squaredNorm();
  return occ - stagger_offset(g, x);
}

void gauss_apply(StateVector& s, const LatticeGeometry& g, Site x, bool dagger) {
  const RegisterLayout& layout = s.layout();
  const int n = layout.groupOrder;
  const double delta = 2.0 * pi / n;
  const std::int64_t s1 = layout.quditStride(g.linkIndex({x, 1}));
  const std::int64_t s2 = layout.quditStride(g.linkIndex({x, 2}));
  const std::int64_t s3 = layout.quditStride(g.linkIndex({g.neighbor(x, 1, -1), 1}));
  const std::int64_t s4 = layout.quditStride(g.linkIndex({g.neighbor(x, 2, -1), 2}));
  const bool hasModes = layout.numModes > 0;
  const int mode = hasModes ? g.siteIndex(x) : 0;
  const int offset = stagger_offset(g, x);

  Eigen::VectorXcd& amps = s.amplitudes();
  for (std::int64_t idx = 0; idx < layout.dim(); ++idx) {
    const int m1 = int((idx / s1) % n), m2 = int((idx / s2) % n);
    const int m3 = int((idx / s3) % n), m4 = int((idx / s4) % n);
    const int occ = hasModes && layout.modeOccupied(idx, mode) ? 1 : 0;
    double theta = delta * (m1 + m2 - m3 - m4) - delta * (occ - offset);
    if (dagger) theta = -theta;
    amps(idx) *= std::polar(1.0, theta);
  }
}

double gauss_residual(const StateVector& s, const LatticeGeometry& g) {
  double worst = 0.0;
  const double nrm = s.norm();
  if (nrm == 0.0) return 0.0;
  for (int i = 0; i < g.numSites(); ++i) {
    StateVector t = s;
    gauss_apply(t, g, g.site(i));
    worst = std::max(worst, (t.amplitudes() - s.amplitudes()).norm() / nrm);
  }
  return worst;
}

StateVector dirac_sea(const LatticeGeometry& g, int groupOrder, bool withAncilla) {
  RegisterLayout layout(groupOrder, g.numLinks(), g.numSites(), withAncilla ? 1 : 0);
  std::int64_t base = 0;
  for (int m = 0; m < layout.numModes; ++m) {
    if (g.siteParity(g.site(m)) == Parity::Odd) base |= std::int64_t(1) << m;
  }
  StateVector s(layout);
  if (withAncilla) {
    const std::int64_t stride = layout.quditStride(layout.ancillaSlot());
    const double amp = 1.0 / std::sqrt(double(groupOrder));
    for (int m = 0; m < groupOrder; ++m) s.amplitudes()(base + m * stride) = amp;
  } else {
    s.amplitudes()(base) = 1.0;
  }
  return s;
}

double energy_expectation(const StateVector& s, const LatticeGeometry& g, const CouplingSet& c,
                          TermSet terms) {
  StateVector hs = apply_H(s, g, c, terms);
  return s.amplitudes().dot(hs.amplitudes()).real() / s.amplitudes().squaredNorm();
}

double total_fermion_number(const StateVector& s) {
  const RegisterLayout& layout = s.layout();
  const std::int64_t modeMask = (std::int64_t(1) << layout.numModes) - 1;
  double total = 0.0;
  const Eigen::VectorXcd& amps = s.amplitudes();
  for (std::int64_t idx = 0; idx < layout.dim(); ++idx) {
    total += std::norm(amps(idx)) * std::popcount(std::uint64_t(idx & modeMask));
  }
  return total / amps.squaredNorm();
}

}  // namespace znsim

#include "znsim/krylov.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace znsim {

using cd = std::complex<double>;

namespace {

// exp(-i dt T) e1 for the real symmetric tridiagonal T formed by the first m
// alpha/beta coefficients.
Eigen::VectorXcd tridiag_exp_e1(const std::vector<double>& alpha, const std::vector<double>& beta,
                                int m, double dt) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    t(k, k) = alpha[k];
    if (k + 1 < m) t(k, k + 1) = t(k + 1, k) = beta[k];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  Eigen::VectorXd e1coef = es.eigenvectors().row(0);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(m);
  for (int k = 0; k < m; ++k) {
    out += std::polar(1.0, -dt * es.eigenvalues()(k)) * e1coef(k) * es.eigenvectors().col(k).cast<cd>();
  }
  return out;
}

}  // namespace

Eigen::VectorXcd lanczos_expmv(const MatVec& h, const Eigen::VectorXcd& v, double t, double tol,
                               int maxBasis) {
  const auto dim = v.size();
  Eigen::VectorXcd cur = v;
  if (t == 0.0) return cur;
  double remaining = t;
  double dt = t;
  const double tEps = 1e-14 * std::abs(t);

  while (std::abs(remaining) > tEps) {
    if (std::abs(dt) > std::abs(remaining)) dt = remaining;
    const double nrm = cur.norm();
    if (nrm == 0.0) return cur;

    const int m = int(std::min<Eigen::Index>(maxBasis, dim));
    std::vector<Eigen::VectorXcd> basis;
    basis.reserve(m);
    std::vector<double> alpha, beta;
    basis.push_back(cur / nrm);
    bool happy = false;
    Eigen::VectorXcd w(dim);
    for (int k = 0; k < m; ++k) {
      h(basis[k], w);
      cd a = basis[k].dot(w);
      alpha.push_back(a.real());
      w -= a * basis[k];
      if (k > 0) w -= beta[k - 1] * basis[k - 1];
      // full reorthogonalization
      for (const auto& q : basis) w -= q.dot(w) * q;
      double b = w.norm();
      if (k + 1 == m) break;
      if (b < 1e-13) { happy = true; break; }
      beta.push_back(b);
      basis.push_back(w / b);
    }
    const int mUsed = int(alpha.size());

    auto assemble = [&](int mm) {
      Eigen::VectorXcd small = tridiag_exp_e1(alpha, beta, mm, dt);
      Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
      for (int k = 0; k < mm; ++k) out += small(k) * basis[k];
      return Eigen::VectorXcd(nrm * out);
    };

    Eigen::VectorXcd full = assemble(mUsed);
    bool accept = happy || mUsed < maxBasis;
    if (!accept) {
      Eigen::VectorXcd reduced = assemble(std::max(2, mUsed - 6));
      accept = (full - reduced).norm() < tol * std::max(1.0, nrm);
    }
    if (accept) {
      cur = full;
      remaining -= dt;
      dt *= 2.0;
    } else {
      dt *= 0.5;
    }
  }
  return cur;
}

}  // namespace znsim

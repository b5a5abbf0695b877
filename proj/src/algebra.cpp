#include "znsim/algebra.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "znsim/errors.hpp"

namespace znsim {

using std::numbers::pi;
using cd = std::complex<double>;

namespace {
void check_order(int n) {
  if (n < 2) throw BadOrderError("BadOrder: group order must be >= 2, got " + std::to_string(n));
}

// Map an angle to the principal branch (-pi, pi].
double principal_angle(double theta) {
  double t = std::remainder(theta, 2.0 * pi);  // (-pi, pi] up to the -pi edge
  if (t <= -pi + 1e-15) t = pi;
  return t;
}
}  // namespace

Eigen::MatrixXcd clock_p(int n) {
  check_order(n);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  const double delta = 2.0 * pi / n;
  for (int m = 0; m < n; ++m) p(m, m) = std::polar(1.0, delta * m);
  return p;
}

Eigen::MatrixXcd shift_q(int n) {
  check_order(n);
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, n);
  for (int m = 0; m < n; ++m) q((m + 1) % n, m) = 1.0;
  return q;
}

Eigen::MatrixXcd log_shift(int n, bool dagger) {
  check_order(n);
  // Q is diagonal in the Fourier basis |k>_F = (1/sqrt N) sum_m w^{mk} |m>,
  // with eigenvalue w^{-k}, w = e^{2pi i/N}; Q^dag has eigenvalue w^{+k}.
  const double delta = 2.0 * pi / n;
  Eigen::MatrixXcd fourier(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) fourier(m, k) = std::polar(1.0 / std::sqrt(double(n)), delta * m * k);
  Eigen::VectorXcd phases(n);
  for (int k = 0; k < n; ++k) {
    double theta = principal_angle(dagger ? delta * k : -delta * k);
    phases(k) = cd(0.0, theta);
  }
  return fourier * phases.asDiagonal() * fourier.adjoint();
}

Eigen::VectorXcd ancilla_in_state(int n) {
  check_order(n);
  return Eigen::VectorXcd::Constant(n, cd(1.0 / std::sqrt(double(n)), 0.0));
}

Eigen::MatrixXcd exp_anti_hermitian(const Eigen::MatrixXcd& a) {
  // a = i h with h Hermitian; exp(a) = V e^{i lambda} V^dag.
  Eigen::MatrixXcd h = a / cd(0.0, 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(h.rows());
  for (int k = 0; k < h.rows(); ++k) phases(k) = std::polar(1.0, es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd exp_minus_i_hermitian(const Eigen::MatrixXcd& h, double theta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(h.rows());
  for (int k = 0; k < h.rows(); ++k) phases(k) = std::polar(1.0, -theta * es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace znsim

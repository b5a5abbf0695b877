#pragma once

#include <Eigen/Dense>

namespace znsim {

// Z_N clock/shift algebra: P|m> = e^{i 2pi m/N}|m>, Q|m> = |m+1 mod N>,
// P Q P^dag = e^{i 2pi/N} Q.

Eigen::MatrixXcd clock_p(int n);
Eigen::MatrixXcd shift_q(int n);

// Principal-branch anti-Hermitian logarithm of Q (or Q^dag when dagger is set):
// eigenphases taken in (-pi, pi]. exp(log_shift(N)) == shift_q(N).
Eigen::MatrixXcd log_shift(int n, bool dagger = false);

// |in~> = (1/sqrt(N)) sum_m |m~>
Eigen::VectorXcd ancilla_in_state(int n);

// exp(A) of an anti-Hermitian matrix via eigendecomposition of -iA.
Eigen::MatrixXcd exp_anti_hermitian(const Eigen::MatrixXcd& a);

// exp(-i theta H) of a Hermitian matrix.
Eigen::MatrixXcd exp_minus_i_hermitian(const Eigen::MatrixXcd& h, double theta = 1.0);

}  // namespace znsim

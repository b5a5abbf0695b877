#pragma once

#include <Eigen/Dense>
#include <functional>

namespace znsim {

using MatVec = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

// e^{-i t H} v for Hermitian H given as a matvec, via Lanczos with full
// reorthogonalization and adaptive substepping.
Eigen::VectorXcd lanczos_expmv(const MatVec& h, const Eigen::VectorXcd& v, double t,
                               double tol = 1e-10, int maxBasis = 60);

}  // namespace znsim

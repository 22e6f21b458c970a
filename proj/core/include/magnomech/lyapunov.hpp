#pragma once

#include <Eigen/Dense>

namespace magnomech {

struct LyapunovSolution {
  Eigen::MatrixXd x;
  double residual = 0.0;  ///< ||A X + X A^T + Q||_F
  double rcond = 0.0;     ///< reciprocal condition estimate of the Kronecker operator
};

/// Solves the continuous Lyapunov equation A X + X A^T + Q = 0 for symmetric Q.
///
/// The n^2 x n^2 Kronecker system (I (x) A + A (x) I) vec(X) = -vec(Q) is
/// factorized once with partial pivoting and refined by one step of iterative
/// refinement; X is symmetrized before return. Intended for the small (n <= 8)
/// drift matrices of this library, where the O(n^6) cost is negligible.
///
/// Throws NumericError when the operator is numerically singular, i.e. when A
/// has a pair of eigenvalues with lambda_i + lambda_j ~ 0.
LyapunovSolution solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q);

/// Kronecker-form Lyapunov operator K with K vec(X) = vec(A X + X A^T), column-major vec.
Eigen::MatrixXd lyapunov_operator(const Eigen::MatrixXd& a);

}  // namespace magnomech

#include "magnomech/lyapunov.hpp"

#include <sstream>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {
constexpr double kMinRcond = 1e-14;
}

Eigen::MatrixXd lyapunov_operator(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n * n, n * n);
  // vec(A X) = (I (x) A) vec X ; vec(X A^T) = (A (x) I) vec X
  for (Eigen::Index blk = 0; blk < n; ++blk) {
    k.block(blk * n, blk * n, n, n) += a;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (a(i, j) != 0.0) {
        k.block(i * n, j * n, n, n).diagonal().array() += a(i, j);
      }
    }
  }
  return k;
}

LyapunovSolution solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q) {
  if (a.rows() != a.cols() || q.rows() != a.rows() || q.cols() != a.cols()) {
    throw InvalidParameter("solve_lyapunov: dimension mismatch");
  }
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXd k = lyapunov_operator(a);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(k);

  LyapunovSolution out;
  out.rcond = lu.rcond();
  if (!(out.rcond > kMinRcond)) {
    std::ostringstream os;
    os << "Lyapunov operator is singular or ill-conditioned (rcond = " << out.rcond << ")";
    throw NumericError(os.str());
  }

  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(q.data(), n * n);
  Eigen::VectorXd x = lu.solve(rhs);
  const Eigen::VectorXd r = rhs - k * x;
  x += lu.solve(r);

  out.x = Eigen::Map<const Eigen::MatrixXd>(x.data(), n, n);
  out.x = 0.5 * (out.x + out.x.transpose()).eval();
  out.residual = (a * out.x + out.x * a.transpose() + q).norm();
  if (!out.x.allFinite()) throw NumericError("Lyapunov solution is not finite");
  return out;
}

}  // namespace magnomech

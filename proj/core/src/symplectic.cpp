#include "magnomech/symplectic.hpp"

#include <complex>

namespace magnomech {

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

double uncertainty_margin(const Eigen::MatrixXd& v) {
  const auto modes = static_cast<int>(v.rows() / 2);
  const Eigen::MatrixXcd h =
      v.cast<std::complex<double>>() + std::complex<double>(0.0, 0.5) * symplectic_form(modes).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace magnomech

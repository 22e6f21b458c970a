#pragma once

#include <Eigen/Dense>

namespace magnomech {

/// Block-diagonal symplectic form (+) i sigma_y = (+) [[0, 1], [-1, 0]] over `modes` modes.
Eigen::MatrixXd symplectic_form(int modes);

/// Smallest eigenvalue of the Hermitian matrix V + i Omega / 2. Non-negative
/// (up to round-off) for every physical covariance matrix in the vacuum = 1/2
/// convention.
double uncertainty_margin(const Eigen::MatrixXd& v);

}  // namespace magnomech

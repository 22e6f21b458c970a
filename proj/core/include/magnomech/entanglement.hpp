#pragma once

#include <array>

#include <Eigen/Dense>

#include "magnomech/gaussian.hpp"

namespace magnomech {

/// Pairwise, one-vs-two and residual-contangle measures of a three-mode state.
/// Modes are indexed (phonon, magnon, photon) = (b, m, c).
struct EntanglementReport {
  double e_bm = 0.0;
  double e_bc = 0.0;
  double e_mc = 0.0;
  /// E_{b|mc}, E_{m|bc}, E_{c|bm}
  std::array<double, 3> e_1v2{};
  /// R^{b|mc}, R^{m|bc}, R^{c|bm}, unclamped
  std::array<double, 3> residual{};
  /// max(0, min residual)
  double r_min = 0.0;
};

/// Tolerance on V + i Omega / 2 >= 0 before a covariance is rejected as unphysical.
inline constexpr double kPhysicalityTolerance = 1e-8;

/// Smallest symplectic eigenvalue of a 2n x 2n real symmetric matrix, taken as
/// the smallest positive imaginary part of eig(Omega V).
double min_symplectic_eigenvalue(const Eigen::MatrixXd& v);

/// max(0, -log2(2 nu)).
double log_negativity_from_nu(double nu);

/// Flips the sign of the Y quadrature of `mode` (congruence V -> P V P).
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& v, int mode);

/// E_{i|j} of the reduced two-mode state; throws InvalidState for an unphysical block.
double log_negativity_pair(const CovarianceMatrix& v, Mode i, Mode j);

/// E_{i|jk} with the partial transposition applied to mode i of the full state.
double log_negativity_one_vs_two(const CovarianceMatrix& v, Mode i);

EntanglementReport residual_contangle(const CovarianceMatrix& v);

}  // namespace magnomech

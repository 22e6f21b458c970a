#pragma once

#include <random>

#include <Eigen/Dense>

#include "magnomech/gaussian.hpp"
#include "magnomech/model.hpp"

namespace fixtures {

inline magnomech::PhysicalParams with_drives(double omega_c, double omega_m, double delta_c,
                                             double delta_m) {
  magnomech::PhysicalParams p = magnomech::reference_params();
  p.omega_cap_c = omega_c;
  p.omega_cap_m = omega_m;
  p.delta_c = delta_c;
  p.delta_m = delta_m;
  return p;
}

inline magnomech::Matrix6 random_symmetric(std::mt19937& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  magnomech::Matrix6 m;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) m(i, j) = m(j, i) = u(rng);
  }
  return m;
}

/// Random symplectic matrix exp(Omega H) built from a random symmetric H
/// via a scaled Taylor series with repeated squaring.
inline Eigen::MatrixXd random_symplectic(std::mt19937& rng, int modes, double scale) {
  const int n = 2 * modes;
  std::normal_distribution<double> g(0.0, scale);
  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) h(i, j) = h(j, i) = g(rng);
  }
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  const Eigen::MatrixXd gen = omega * h;
  constexpr int squarings = 10;
  const Eigen::MatrixXd x = gen / static_cast<double>(1 << squarings);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd s = term;
  for (int k = 1; k < 20; ++k) {
    term = term * x / k;
    s += term;
  }
  for (int k = 0; k < squarings; ++k) s = s * s;
  return s;
}

/// Physical covariance S diag(nu_k, nu_k) S^T with nu_k >= 1/2.
inline Eigen::MatrixXd random_physical_covariance(std::mt19937& rng, int modes, double scale) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  Eigen::VectorXd d(2 * modes);
  for (int k = 0; k < modes; ++k) d(2 * k) = d(2 * k + 1) = u(rng);
  const Eigen::MatrixXd s = random_symplectic(rng, modes, scale);
  Eigen::MatrixXd v = s * d.asDiagonal() * s.transpose();
  return 0.5 * (v + v.transpose());
}

}  // namespace fixtures

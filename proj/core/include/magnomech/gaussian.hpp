#pragma once

// Gaussian description of the linearized fluctuation dynamics.
//
// Quadrature ordering (fixed everywhere in the library):
//   index 0, 1 : X_b, Y_b   (phonon)
//   index 2, 3 : X_m, Y_m   (magnon)
//   index 4, 5 : X_c, Y_c   (photon)
// with X = (o + o^dag)/sqrt(2), Y = (o - o^dag)/(i sqrt(2)), so the vacuum
// covariance is I/2. The convention X = (o + o^dag)/2 (vacuum 1/4)
// only appears in PhononObservables.

#include <Eigen/Dense>

#include "magnomech/dopri.hpp"
#include "magnomech/model.hpp"

namespace magnomech {

enum class Mode : int { phonon = 0, magnon = 1, photon = 2 };

inline constexpr int kNumModes = 3;
inline constexpr int kDim = 2 * kNumModes;

using Matrix6 = Eigen::Matrix<double, kDim, kDim>;

/// standard:   D = diag(gamma_b (2 nbar0 + 1) x2, gamma_m x2, gamma_c x2)
/// supplement: the same plus 1/2 on every diagonal entry, reproducing the
///             constant terms of the component-wise covariance equations.
enum class DiffusionVariant { standard, supplement };

struct GaussianModel {
  Matrix6 drift = Matrix6::Zero();
  Matrix6 diffusion = Matrix6::Zero();
};

struct CovarianceMatrix {
  Matrix6 v = Matrix6::Identity() / 2;

  static CovarianceMatrix vacuum() { return {}; }
  /// Product of thermal states with the given occupations (phonon, magnon, photon).
  static CovarianceMatrix thermal(double n_phonon, double n_magnon = 0.0, double n_photon = 0.0);
};

struct StabilityReport {
  bool stable = false;
  double abscissa = 0.0;  ///< max Re(lambda(A))
};

struct PhononObservables {
  double n_b = 0.0;      ///< fluctuation phonon number
  double dx2 = 0.0;      ///< Var(X_b), vacuum = 1/4
  double dy2 = 0.0;      ///< Var(Y_b), vacuum = 1/4
  double dx2_min = 0.0;  ///< min over theta of Var(X_b^theta), vacuum = 1/4
};

/// Strict Hurwitz threshold on the real parts of the drift spectrum.
inline constexpr double kStabilityThreshold = -1e-12;

GaussianModel build_model(const WorkingPoint& wp, const PhysicalParams& p,
                          DiffusionVariant variant = DiffusionVariant::standard);

StabilityReport is_stable(const GaussianModel& m);

/// Solves A V + V A^T + D = 0. Throws StabilityError for a non-Hurwitz drift
/// and NumericError when the solve is ill-conditioned.
CovarianceMatrix steady_covariance(const GaussianModel& m);

/// Right-hand side A V + V A^T + D of the covariance equation of motion.
Matrix6 covariance_rhs(const GaussianModel& m, const Matrix6& v);

/// ||A V + V A^T + D||_F.
double lyapunov_residual(const GaussianModel& m, const CovarianceMatrix& v);

/// Integrates dV/dt = A V + V A^T + D over [0, t] starting from v0 with an
/// adaptive Dormand-Prince 5(4) scheme; `dt` is the initial step. V is
/// re-symmetrized after every accepted step.
CovarianceMatrix evolve_covariance(const GaussianModel& m, const CovarianceMatrix& v0, double t,
                                   double dt);
CovarianceMatrix evolve_covariance(const GaussianModel& m, const CovarianceMatrix& v0, double t,
                                   double dt, const DopriOptions& options,
                                   DopriStats* stats = nullptr);

PhononObservables phonon_observables(const CovarianceMatrix& v);

/// Index of the X quadrature of a mode in the 6-vector.
constexpr int quadrature_index(Mode mode) { return 2 * static_cast<int>(mode); }

}  // namespace magnomech

#pragma once

// Brute-force validation path: the three-mode master equation integrated in a
// truncated number-state basis. Used to cross-check the Gaussian covariance
// solver (quadratic Hamiltonian, exactly Gaussian) and the working-point
// amplitude formulas (full nonlinear Hamiltonian at small drive).
//
// The master equation is
//   d rho/dt = -i[H, rho] + gamma_c L[c] + gamma_m L[m]
//              + gamma_b nbar0 L[b^dag] + gamma_b (1 + nbar0) L[b]
// with L[o] rho = 2 o rho o^dag - {o^dag o, rho}.

#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "magnomech/dopri.hpp"
#include "magnomech/gaussian.hpp"
#include "magnomech/model.hpp"

namespace magnomech {

struct ModeCutoff {
  Mode mode = Mode::phonon;
  int n_max = 2;           ///< highest retained number state
  int initial_number = 0;  ///< start in |initial_number>
};

struct TruncationSpec {
  std::vector<ModeCutoff> modes;
  double convergence_tol = 1e-3;
  std::size_t dimension_cap = 4096;

  std::size_t dimension() const;
  /// Throws InvalidParameter on n_max < 2, duplicate modes, empty mode list,
  /// tol <= 0 or a dimension above the cap.
  void validate() const;
  /// Copy with every n_max raised by `extra`.
  TruncationSpec enlarged(int extra) const;
};

/// Quadratic Hamiltonian about a working point:
///   D'_c c^dag c + D'_m m^dag m + w'_b b^dag b + (G_bc^* c + G_bc c^dag)(b + b^dag)
///   + (G_bm^* m + G_bm m^dag)(b + b^dag) + chi (b^dag^2 + b^2)
struct LinearizedHamiltonian {
  WorkingPoint wp;
};

/// Nonlinear Hamiltonian of the driven system in the drive frame:
///   D_c c^dag c + D_m m^dag m + w_b b^dag b + g_bc c^dag c (b + b^dag)
///   + g_bm m^dag m (b + b^dag)^2 + (Omega_c c^dag + Omega_m m^dag + h.c.)
struct FullHamiltonian {};

using HamiltonianSpec = std::variant<LinearizedHamiltonian, FullHamiltonian>;

/// First and second moments of the retained modes, in TruncationSpec order.
struct MomentSet {
  std::vector<Mode> modes;
  Eigen::VectorXcd mean;       ///< <o_k>
  Eigen::MatrixXcd normal;     ///< <o_k^dag o_l>
  Eigen::MatrixXcd anomalous;  ///< <o_k o_l>

  int index_of(Mode m) const;
  double number(Mode m) const;
  Complex amplitude(Mode m) const;
  Complex square(Mode m) const;
  /// Symmetrized covariance of the quadrature fluctuations (vacuum = 1/2),
  /// ordered (X_1, Y_1, X_2, Y_2, ...) over `modes`.
  Eigen::MatrixXd covariance() const;
  /// Largest absolute difference over all stored moments (same mode list required).
  double max_difference(const MomentSet& other) const;
};

struct LindbladOptions {
  DopriOptions ode{1e-9, 1e-11};
  /// Rerun with every n_max + 2 and compare moments against convergence_tol.
  bool check_convergence = true;
  /// Throw TruncationError instead of returning converged = false.
  bool require_convergence = true;
  /// Positivity checkpoints spread uniformly over [0, t_end] (the final state is always checked).
  int positivity_checkpoints = 4;
};

struct LindbladResult {
  MomentSet moments;
  bool converged = true;
  double convergence_delta = 0.0;  ///< moment change under n_max + 2 (0 when not checked)
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;  ///< largest anti-Hermitian part produced by one step
  double min_eigenvalue = 0.0;
  DopriStats stats;
};

inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-8;

/// Integrates from the product number state given by the truncation spec up
/// to t_end and returns the moments at t_end. Dissipation rates and, for
/// FullHamiltonian, every Hamiltonian parameter come from `p`.
LindbladResult integrate_lindblad(const HamiltonianSpec& hamiltonian, const PhysicalParams& p,
                                  const TruncationSpec& trunc, double t_end,
                                  const LindbladOptions& options = {});

/// Moment trajectory sampled at the given (increasing) times, no convergence rerun.
std::vector<MomentSet> sample_lindblad(const HamiltonianSpec& hamiltonian,
                                       const PhysicalParams& p, const TruncationSpec& trunc,
                                       const std::vector<double>& times,
                                       const LindbladOptions& options = {});

struct WorkingPointValidation {
  WorkingPoint predicted;
  Complex measured_c, measured_m, measured_b;
  double deviation_c = 0.0, deviation_m = 0.0, deviation_b = 0.0;
  double tolerance = 0.05;
  bool converged = true;
  bool pass = false;
  LindbladResult lindblad;
};

/// Compares the closed-form amplitudes (c, m, b) with <c>, <m>, <b> from the
/// full nonlinear master equation at t_end. The deviation of a mode is
/// |measured - predicted| / |predicted|, or |measured| when the prediction is 0.
/// Throws TruncationError when a predicted |amplitude| exceeds n_max / 4.
WorkingPointValidation validate_working_point(const PhysicalParams& p, const TruncationSpec& trunc,
                                              double t_end, const LindbladOptions& options = {});

}  // namespace magnomech

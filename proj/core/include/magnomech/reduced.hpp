#pragma once

// Reduced phonon model obtained by adiabatically eliminating the photon and
// magnon modes. Photon and magnon act as two engineered baths characterized
// by the complex rates zeta_{+x}, zeta_{-x} (x = c, m).

#include "magnomech/model.hpp"

namespace magnomech {

struct ZetaSet {
  Complex plus_c, minus_c;  // photon bath
  Complex plus_m, minus_m;  // magnon bath

  Complex plus() const { return plus_c + plus_m; }
  Complex minus() const { return minus_c + minus_m; }
  /// Net cooling rate Re(zeta_-) - Re(zeta_+) added to gamma_b.
  double cooling_rate() const { return minus().real() - plus().real(); }
};

struct ReducedOptions {
  /// Use the bare detunings Delta_x instead of the shifted Delta'_x (sensitivity studies).
  bool bare_detunings = false;
};

struct SteadyMoments {
  double n_b = 0.0;  ///< <b^dag b>_ss
  Complex b2;        ///< <b^2>_ss
};

struct SqueezingEstimate {
  double dx2 = 0.25;  ///< analytic Var(X_b), vacuum = 1/4
  bool squeezed = false;
};

struct ReducedPhononResult {
  ZetaSet zeta;
  double omega_b_tilde = 0.0;
  double n_b_ss = 0.0;
  Complex b2_ss;
  double dx2 = 0.25;
  bool squeezed = false;
};

/// zeta_{+-x} = |G_bx|^2 e^{-r} [cosh r / (gamma_x - i(D_x +- w)) + sinh r / (gamma_x - i(D_x -+ w))]
/// with w = omega_bar and D_x the shifted detuning (or the bare one, see ReducedOptions).
ZetaSet zeta_coefficients(const WorkingPoint& wp, const PhysicalParams& p,
                          const ReducedOptions& options = {});

/// omega_b' minus the bath-induced frequency shifts Im(zeta_{+x} + zeta_{-x}).
double effective_phonon_frequency(const ZetaSet& zeta, const WorkingPoint& wp);

/// Solves the coupled steady-state relations for <b^dag b> and <b^2> as one
/// 3x3 real linear system in (n, Re b2, Im b2). Throws ReducedModelUnstable
/// when gamma_b + Re(zeta_-) - Re(zeta_+) <= 0 or the system is singular.
SteadyMoments steady_moments(const ZetaSet& zeta, const WorkingPoint& wp, const PhysicalParams& p);

/// dx2 = (omega_b n - chi) / (2 omega_b') + 1/4, squeezed = chi / omega_b > n.
SqueezingEstimate squeezing_estimate(double n_b_ss, const WorkingPoint& wp);

ReducedPhononResult solve_reduced_phonon(const WorkingPoint& wp, const PhysicalParams& p,
                                         const ReducedOptions& options = {});

}  // namespace magnomech

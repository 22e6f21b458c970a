#pragma once

// Classical working point of the driven photon-phonon-magnon system and the
// effective couplings of its linearized Hamiltonian.
//
// Units: hbar = 1 and, by convention, every rate is quoted in units of the
// phonon frequency omega_b. Nothing below assumes omega_b == 1, so inputs can
// equally be given in absolute angular-frequency units.

#include <complex>

namespace magnomech {

using Complex = std::complex<double>;

struct PhysicalParams {
  double omega_b = 1.0;
  double delta_c = 0.0;
  double delta_m = 1.69;
  double gamma_b = 1e-5;
  double gamma_c = 0.1;
  double gamma_m = 0.1;
  double g_bc = 1e-5;
  double g_bm = 1e-5;
  Complex omega_cap_c{300.0, 0.0};
  Complex omega_cap_m{400.0, 0.0};
  double nbar0 = 1.0;

  /// Throws InvalidParameter on non-positive rates, negative nbar0 or non-finite fields.
  void validate() const;
};

/// Reference parameter set used throughout the phonon-squeezing figures:
/// (gamma_b, gamma_c, gamma_m) = (1e-5, 0.1, 0.1), g_bc = g_bm = 1e-5, nbar0 = 1,
/// (Omega_m, Omega_c) = (400, 300), Delta_m = 1.69, Delta_c = 0.
PhysicalParams reference_params();

struct MaterialParams {
  double sigma = 1.0;  ///< density of magnetic particles
  double b1 = 1.0;     ///< magnetoelastic constant B1
  double kx = 1.0;     ///< in-plane phonon wavenumber
  double m_sat = 1.0;  ///< saturation magnetization
};

struct WorkingPoint {
  Complex c_bar;
  Complex m_bar;
  Complex b_bar;  // real by construction
  double chi = 0.0;
  Complex g_cap_bc;
  Complex g_cap_bm;
  double delta_c_prime = 0.0;
  double delta_m_prime = 0.0;
  double omega_b_prime = 0.0;
  double omega_bar = 0.0;
  double r = 0.0;

  /// Relative residuals of the exact mean-field equations evaluated at the
  /// approximate amplitudes (b, c, m). Zero for an exact fixed point.
  double residual_b = 0.0;
  double residual_c = 0.0;
  double residual_m = 0.0;
};

/// Magnetostrictive phonon-magnon coupling sigma * B1 * kx^2 / M_S.
double coupling_from_material(const MaterialParams& mat);

/// Computes m -> chi -> c -> b -> effective couplings -> shifted detunings.
/// Throws UnstableWorkingPoint when omega_b + 4 chi <= 0.
WorkingPoint derive_working_point(const PhysicalParams& p);

/// Bose occupation 1 / (exp(hbar omega / k_B T) - 1) for an angular frequency
/// omega in rad/s and a temperature in kelvin. Returns 0 at T = 0.
double thermal_occupation(double omega_si, double temperature);

/// Same as thermal_occupation but for the dimensionless ratio hbar omega / k_B T.
double bose_occupation(double energy_over_kt);

}  // namespace magnomech

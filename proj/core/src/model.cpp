#include "magnomech/model.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InvalidParameter(std::string(name) + " must be finite");
  }
}

void require_positive(double v, const char* name) {
  require_finite(v, name);
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << name << " must be > 0 (got " << v << ")";
    throw InvalidParameter(os.str());
  }
}

}  // namespace

void PhysicalParams::validate() const {
  require_positive(omega_b, "omega_b");
  require_positive(gamma_b, "gamma_b");
  require_positive(gamma_c, "gamma_c");
  require_positive(gamma_m, "gamma_m");
  require_finite(delta_c, "delta_c");
  require_finite(delta_m, "delta_m");
  require_finite(g_bc, "g_bc");
  require_finite(g_bm, "g_bm");
  require_finite(omega_cap_c.real(), "omega_cap_c");
  require_finite(omega_cap_c.imag(), "omega_cap_c");
  require_finite(omega_cap_m.real(), "omega_cap_m");
  require_finite(omega_cap_m.imag(), "omega_cap_m");
  require_finite(nbar0, "nbar0");
  if (nbar0 < 0.0) throw InvalidParameter("nbar0 must be >= 0");
}

PhysicalParams reference_params() { return PhysicalParams{}; }

double coupling_from_material(const MaterialParams& mat) {
  require_positive(mat.sigma, "sigma");
  require_positive(mat.m_sat, "m_sat");
  require_finite(mat.b1, "b1");
  require_finite(mat.kx, "kx");
  return mat.sigma * mat.b1 * mat.kx * mat.kx / mat.m_sat;
}

WorkingPoint derive_working_point(const PhysicalParams& p) {
  p.validate();
  const Complex i{0.0, 1.0};
  WorkingPoint wp;

  wp.m_bar = p.omega_cap_m / (i * p.gamma_m - p.delta_m);
  wp.chi = p.g_bm * std::norm(wp.m_bar);

  const double stiffness = p.omega_b + 4.0 * wp.chi;
  if (!(stiffness > 0.0)) {
    std::ostringstream os;
    os << "unstable working point: omega_b + 4 chi = " << stiffness << " <= 0 (chi = " << wp.chi
       << ")";
    throw UnstableWorkingPoint(os.str(), wp.chi);
  }

  wp.c_bar = p.omega_cap_c / (i * p.gamma_c - p.delta_c);
  const double radiation_force = p.g_bc * std::norm(wp.c_bar);
  wp.b_bar = Complex{-radiation_force / stiffness, 0.0};

  wp.g_cap_bc = p.g_bc * wp.c_bar;
  wp.g_cap_bm = 4.0 * p.g_bm * wp.m_bar * wp.b_bar;

  const double b = wp.b_bar.real();
  wp.delta_c_prime = p.delta_c + 2.0 * p.g_bc * b;
  wp.delta_m_prime = p.delta_m + 4.0 * p.g_bm * b * b;

  wp.omega_b_prime = p.omega_b + 2.0 * wp.chi;
  wp.omega_bar = std::sqrt(p.omega_b * stiffness);

  if (wp.chi != 0.0) {
    // arccoth(y) = atanh(1/y); the argument 2 chi / omega_b' stays inside (-1, 1)
    // whenever omega_b + 4 chi > 0, but guard against round-off at the edge.
    const double x = 2.0 * wp.chi / wp.omega_b_prime;
    if (!(std::abs(x) < 1.0)) {
      throw UnstableWorkingPoint("squeezing parameter is complex (|2 chi / omega_b'| >= 1)",
                                 wp.chi);
    }
    wp.r = 0.5 * std::atanh(x);
  }

  // Residuals of the exact mean-field equations at the approximate amplitudes.
  const Complex two_re_b{2.0 * b, 0.0};
  if (radiation_force != 0.0) {
    const Complex res =
        (p.omega_b - i * p.gamma_b) * wp.b_bar + radiation_force + 2.0 * wp.chi * two_re_b;
    wp.residual_b = std::abs(res) / std::abs(radiation_force);
  }
  if (std::abs(p.omega_cap_c) > 0.0) {
    const Complex res = (p.delta_c + p.g_bc * two_re_b - i * p.gamma_c) * wp.c_bar + p.omega_cap_c;
    wp.residual_c = std::abs(res) / std::abs(p.omega_cap_c);
  }
  if (std::abs(p.omega_cap_m) > 0.0) {
    const Complex res =
        (p.delta_m + p.g_bm * two_re_b * two_re_b - i * p.gamma_m) * wp.m_bar + p.omega_cap_m;
    wp.residual_m = std::abs(res) / std::abs(p.omega_cap_m);
  }
  return wp;
}

double bose_occupation(double energy_over_kt) {
  if (std::isinf(energy_over_kt)) return 0.0;
  if (!(energy_over_kt > 0.0)) {
    throw InvalidParameter("hbar omega / k_B T must be > 0");
  }
  return 1.0 / std::expm1(energy_over_kt);
}

double thermal_occupation(double omega_si, double temperature) {
  constexpr double kHbar = 1.054571817e-34;    // J s
  constexpr double kBoltzmann = 1.380649e-23;  // J / K
  require_positive(omega_si, "omega_b (rad/s)");
  require_finite(temperature, "temperature");
  if (temperature < 0.0) throw InvalidParameter("temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  return bose_occupation(kHbar * omega_si / (kBoltzmann * temperature));
}

}  // namespace magnomech

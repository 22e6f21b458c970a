#include "magnomech/reduced.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

struct ZetaPair {
  Complex plus, minus;
};

ZetaPair bath_rates(Complex g, double gamma, double detuning, double omega_bar, double r) {
  const Complex i{0.0, 1.0};
  const double weight = std::norm(g) * std::exp(-r);
  const double ch = std::cosh(r), sh = std::sinh(r);
  const Complex upper = 1.0 / (gamma - i * (detuning + omega_bar));
  const Complex lower = 1.0 / (gamma - i * (detuning - omega_bar));
  return {weight * (ch * upper + sh * lower), weight * (ch * lower + sh * upper)};
}

}  // namespace

ZetaSet zeta_coefficients(const WorkingPoint& wp, const PhysicalParams& p,
                          const ReducedOptions& options) {
  const double dc = options.bare_detunings ? p.delta_c : wp.delta_c_prime;
  const double dm = options.bare_detunings ? p.delta_m : wp.delta_m_prime;
  const ZetaPair c = bath_rates(wp.g_cap_bc, p.gamma_c, dc, wp.omega_bar, wp.r);
  const ZetaPair m = bath_rates(wp.g_cap_bm, p.gamma_m, dm, wp.omega_bar, wp.r);
  return {c.plus, c.minus, m.plus, m.minus};
}

double effective_phonon_frequency(const ZetaSet& z, const WorkingPoint& wp) {
  return wp.omega_b_prime - (z.plus_c.imag() + z.minus_c.imag() + z.plus_m.imag() + z.minus_m.imag());
}

SteadyMoments steady_moments(const ZetaSet& z, const WorkingPoint& wp, const PhysicalParams& p) {
  const Complex i{0.0, 1.0};
  const Complex zp = z.plus(), zm = z.minus();
  const double chi = wp.chi;
  const double damping = p.gamma_b + zm.real() - zp.real();
  if (!(damping > 0.0)) {
    std::ostringstream os;
    os << "reduced phonon model has no steady state: gamma_b + Re(zeta_-) - Re(zeta_+) = "
       << damping;
    throw ReducedModelUnstable(os.str());
  }
  const double w_tilde = effective_phonon_frequency(z, wp);

  // damping n - Re[a b2] = gamma_b nbar0 + Re zeta_+
  // (damping + i w_tilde) b2 - c n = -(i chi + conj(zeta_+))
  const Complex a = std::conj(zm) - zp + 2.0 * i * chi;
  const Complex c = zm - std::conj(zp) - 2.0 * i * chi;
  const Complex source = -(i * chi + std::conj(zp));

  Eigen::Matrix3d m;
  m << damping, -a.real(), a.imag(),
       -c.real(), damping, -w_tilde,
       -c.imag(), w_tilde, damping;
  const Eigen::Vector3d rhs(p.gamma_b * p.nbar0 + zp.real(), source.real(), source.imag());

  Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
  if (!lu.isInvertible()) throw ReducedModelUnstable("reduced moment system is singular");
  const Eigen::Vector3d x = lu.solve(rhs);
  if (!x.allFinite()) throw ReducedModelUnstable("reduced moment system produced non-finite moments");
  return {x(0), Complex{x(1), x(2)}};
}

SqueezingEstimate squeezing_estimate(double n_b_ss, const WorkingPoint& wp) {
  const double omega_b = wp.omega_b_prime - 2.0 * wp.chi;
  SqueezingEstimate s;
  s.dx2 = (omega_b * n_b_ss - wp.chi) / (2.0 * wp.omega_b_prime) + 0.25;
  s.squeezed = wp.chi / omega_b > n_b_ss;
  return s;
}

ReducedPhononResult solve_reduced_phonon(const WorkingPoint& wp, const PhysicalParams& p,
                                         const ReducedOptions& options) {
  ReducedPhononResult out;
  out.zeta = zeta_coefficients(wp, p, options);
  out.omega_b_tilde = effective_phonon_frequency(out.zeta, wp);
  const SteadyMoments mom = steady_moments(out.zeta, wp, p);
  out.n_b_ss = mom.n_b;
  out.b2_ss = mom.b2;
  const SqueezingEstimate sq = squeezing_estimate(out.n_b_ss, wp);
  out.dx2 = sq.dx2;
  out.squeezed = sq.squeezed;
  return out;
}

}  // namespace magnomech

#include "magnomech/gaussian.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "magnomech/errors.hpp"
#include "magnomech/lyapunov.hpp"

namespace magnomech {

CovarianceMatrix CovarianceMatrix::thermal(double n_phonon, double n_magnon, double n_photon) {
  CovarianceMatrix c;
  c.v.setZero();
  const double occ[kNumModes] = {n_phonon, n_magnon, n_photon};
  for (int k = 0; k < kNumModes; ++k) {
    c.v(2 * k, 2 * k) = occ[k] + 0.5;
    c.v(2 * k + 1, 2 * k + 1) = occ[k] + 0.5;
  }
  return c;
}

GaussianModel build_model(const WorkingPoint& wp, const PhysicalParams& p,
                          DiffusionVariant variant) {
  GaussianModel m;
  Matrix6& a = m.drift;
  const double chi = wp.chi;
  const double wb = wp.omega_b_prime;
  const double gm_re = wp.g_cap_bm.real(), gm_im = wp.g_cap_bm.imag();
  const double gc_re = wp.g_cap_bc.real(), gc_im = wp.g_cap_bc.imag();

  // phonon: X' = (w' - 2 chi) Y - gamma X ; Y' = -(w' + 2 chi) X - gamma Y - 2 Re/Im(G) (X, Y)_{m,c}
  a(0, 0) = -p.gamma_b;
  a(0, 1) = wb - 2.0 * chi;
  a(1, 0) = -(wb + 2.0 * chi);
  a(1, 1) = -p.gamma_b;
  a(1, 2) = -2.0 * gm_re;
  a(1, 3) = -2.0 * gm_im;
  a(1, 4) = -2.0 * gc_re;
  a(1, 5) = -2.0 * gc_im;

  // magnon
  a(2, 0) = 2.0 * gm_im;
  a(2, 2) = -p.gamma_m;
  a(2, 3) = wp.delta_m_prime;
  a(3, 0) = -2.0 * gm_re;
  a(3, 2) = -wp.delta_m_prime;
  a(3, 3) = -p.gamma_m;

  // photon
  a(4, 0) = 2.0 * gc_im;
  a(4, 4) = -p.gamma_c;
  a(4, 5) = wp.delta_c_prime;
  a(5, 0) = -2.0 * gc_re;
  a(5, 4) = -wp.delta_c_prime;
  a(5, 5) = -p.gamma_c;

  const double thermal = p.gamma_b * (2.0 * p.nbar0 + 1.0);
  m.diffusion.diagonal() << thermal, thermal, p.gamma_m, p.gamma_m, p.gamma_c, p.gamma_c;
  if (variant == DiffusionVariant::supplement) {
    m.diffusion.diagonal().array() += 0.5;
  }
  return m;
}

StabilityReport is_stable(const GaussianModel& m) {
  Eigen::EigenSolver<Matrix6> es(m.drift, false);
  StabilityReport r;
  r.abscissa = es.eigenvalues().real().maxCoeff();
  r.stable = r.abscissa < kStabilityThreshold;
  return r;
}

CovarianceMatrix steady_covariance(const GaussianModel& m) {
  const StabilityReport st = is_stable(m);
  if (!st.stable) {
    std::ostringstream os;
    os << "drift matrix is not Hurwitz (spectral abscissa " << st.abscissa << ")";
    throw StabilityError(os.str(), st.abscissa);
  }
  const LyapunovSolution sol = solve_lyapunov(m.drift, m.diffusion);
  CovarianceMatrix c;
  c.v = sol.x;
  return c;
}

Matrix6 covariance_rhs(const GaussianModel& m, const Matrix6& v) {
  Matrix6 av;
  av.noalias() = m.drift * v;
  return av + av.transpose() + m.diffusion;
}

double lyapunov_residual(const GaussianModel& m, const CovarianceMatrix& v) {
  return covariance_rhs(m, v.v).norm();
}

CovarianceMatrix evolve_covariance(const GaussianModel& m, const CovarianceMatrix& v0, double t,
                                   double dt) {
  DopriOptions opt;
  opt.rtol = 1e-11;
  opt.atol = 1e-13;
  return evolve_covariance(m, v0, t, dt, opt);
}

CovarianceMatrix evolve_covariance(const GaussianModel& m, const CovarianceMatrix& v0, double t,
                                   double dt, const DopriOptions& options, DopriStats* stats) {
  if (!(dt > 0.0)) throw InvalidParameter("evolve_covariance: dt must be > 0");
  if (!(t >= 0.0)) throw InvalidParameter("evolve_covariance: t must be >= 0");
  if (t == 0.0) return v0;

  DopriOptions opt = options;
  opt.initial_step = dt;
  auto rhs = [&m](double, const Matrix6& v, Matrix6& dv) {
    dv.noalias() = m.drift * v;
    dv = dv + dv.transpose().eval() + m.diffusion;
  };
  auto symmetrize = [](double, Matrix6& v) { v = 0.5 * (v + v.transpose()).eval(); };

  CovarianceMatrix out;
  out.v = integrate_dopri5(rhs, v0.v, 0.0, t, opt, stats, symmetrize);
  return out;
}

PhononObservables phonon_observables(const CovarianceMatrix& v) {
  PhononObservables o;
  const double vxx = v.v(0, 0), vyy = v.v(1, 1), vxy = v.v(0, 1);
  o.n_b = 0.5 * (vxx + vyy - 1.0);
  o.dx2 = 0.5 * vxx;
  o.dy2 = 0.5 * vyy;
  const double mean = 0.5 * (vxx + vyy);
  const double half_gap = std::sqrt(0.25 * (vxx - vyy) * (vxx - vyy) + vxy * vxy);
  o.dx2_min = 0.5 * (mean - half_gap);
  return o;
}

}  // namespace magnomech

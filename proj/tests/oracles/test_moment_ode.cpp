#include <array>

#include <doctest.h>

#include "magnomech/dopri.hpp"
#include "magnomech/gaussian.hpp"
#include "magnomech/reduced.hpp"

using namespace magnomech;

namespace {

// d<n>/dt   = -2 gamma (<n> - nbar0) - 4 chi Im<b^2>
// d<b^2>/dt = -(2 gamma + 2 i w') <b^2> - 2 i chi (2 <n> + 1)
// for H = w' b^dag b + chi (b^dag^2 + b^2), state (n, Re b2, Im b2).
SteadyMoments integrate_moments(double wprime, double chi, double gamma, double nbar0) {
  Eigen::Vector3d y(nbar0, 0.0, 0.0);
  const auto rhs = [&](double, const Eigen::Vector3d& s, Eigen::Vector3d& d) {
    const std::complex<double> b2(s(1), s(2));
    d(0) = -2 * gamma * (s(0) - nbar0) - 4 * chi * b2.imag();
    const std::complex<double> db2 =
        -(2 * gamma + std::complex<double>(0, 2 * wprime)) * b2 - std::complex<double>(0, 2 * chi) * (2 * s(0) + 1);
    d(1) = db2.real();
    d(2) = db2.imag();
  };
  y = integrate_dopri5(rhs, y, 0.0, 40.0 / gamma, DopriOptions{1e-12, 1e-14});
  return {y(0), {y(1), y(2)}};
}

}  // namespace

TEST_CASE("reduced moments with zeta = 0 match the integrated parametric moment equations") {
  struct Case {
    double chi, gamma, nbar0;
  };
  for (const Case c : std::array<Case, 4>{{{0.1, 0.1, 0.0}, {0.3, 0.05, 1.0}, {0.558, 0.02, 0.5}, {0.0, 0.1, 2.0}}}) {
    PhysicalParams p;
    p.gamma_b = c.gamma;
    p.nbar0 = c.nbar0;
    WorkingPoint wp;
    wp.chi = c.chi;
    wp.omega_b_prime = 1.0 + 2 * c.chi;
    const SteadyMoments lib = steady_moments(ZetaSet{}, wp, p);
    const SteadyMoments ref = integrate_moments(wp.omega_b_prime, c.chi, c.gamma, c.nbar0);
    CHECK(lib.n_b == doctest::Approx(ref.n_b).epsilon(1e-8));
    CHECK(std::abs(lib.b2 - ref.b2) <= 1e-8 * std::max(1.0, std::abs(ref.b2)));
  }
}

TEST_CASE("decoupled phonon covariance relaxes at rate 2 gamma_b") {
  PhysicalParams p;
  p.omega_cap_c = 0;
  p.omega_cap_m = 0;
  p.gamma_b = 0.05;
  p.nbar0 = 1.0;
  const GaussianModel m = build_model(derive_working_point(p), p);
  const CovarianceMatrix v0 = CovarianceMatrix::thermal(3.0);
  for (double t : {1.0, 5.0, 20.0}) {
    const CovarianceMatrix v = evolve_covariance(m, v0, t, 1e-3);
    const double expected = 1.5 + (3.5 - 1.5) * std::exp(-2 * p.gamma_b * t);
    CHECK(v.v(0, 0) == doctest::Approx(expected).epsilon(1e-9));
  }
}

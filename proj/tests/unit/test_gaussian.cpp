#include <random>

#include <doctest.h>

#include "magnomech/errors.hpp"
#include "magnomech/gaussian.hpp"
#include "support/fixtures.hpp"

using namespace magnomech;

namespace {

PhysicalParams decoupled(double nbar0) {
  PhysicalParams p = fixtures::with_drives(0, 0, 0.4, 0.7);
  p.g_bc = 0.0;
  p.g_bm = 0.0;
  p.nbar0 = nbar0;
  return p;
}

}  // namespace

TEST_CASE("decoupled drift is three rotation-damping blocks") {
  const PhysicalParams p = decoupled(1.0);
  const WorkingPoint wp = derive_working_point(p);
  const GaussianModel m = build_model(wp, p);
  Matrix6 a = Matrix6::Zero();
  const double w[3] = {p.omega_b, p.delta_m, p.delta_c};
  const double g[3] = {p.gamma_b, p.gamma_m, p.gamma_c};
  for (int k = 0; k < 3; ++k) {
    a(2 * k, 2 * k) = a(2 * k + 1, 2 * k + 1) = -g[k];
    a(2 * k, 2 * k + 1) = w[k];
    a(2 * k + 1, 2 * k) = -w[k];
  }
  CHECK((m.drift - a).norm() == 0.0);
  Matrix6 d = Matrix6::Zero();
  d.diagonal() << 3 * p.gamma_b, 3 * p.gamma_b, p.gamma_m, p.gamma_m, p.gamma_c, p.gamma_c;
  CHECK((m.diffusion - d).norm() <= 1e-18);
  const GaussianModel s = build_model(wp, p, DiffusionVariant::supplement);
  CHECK((s.diffusion - d - Matrix6::Identity() / 2).norm() <= 1e-15);
}

TEST_CASE("decoupled steady state is thermal phonon and vacuum magnon and photon") {
  const PhysicalParams p = decoupled(1.0);
  const CovarianceMatrix v = steady_covariance(build_model(derive_working_point(p), p));
  Matrix6 expected = Matrix6::Zero();
  expected.diagonal() << 1.5, 1.5, 0.5, 0.5, 0.5, 0.5;
  CHECK((v.v - expected).norm() <= 1e-10);
  CHECK((v.v - CovarianceMatrix::thermal(1.0).v).norm() <= 1e-10);
  const PhononObservables obs = phonon_observables(v);
  CHECK(obs.n_b == doctest::Approx(1.0));
  CHECK(obs.dx2 == doctest::Approx(0.75));
}

TEST_CASE("phonon observables of simple states") {
  const PhononObservables vac = phonon_observables(CovarianceMatrix::vacuum());
  CHECK(vac.n_b == 0.0);
  CHECK(vac.dx2 == 0.25);
  CHECK(vac.dy2 == 0.25);
  CHECK(vac.dx2_min == doctest::Approx(0.25));
  CovarianceMatrix sq;
  const double s = 0.3;
  sq.v(0, 0) = std::exp(-2 * s) / 2;
  sq.v(1, 1) = std::exp(2 * s) / 2;
  const PhononObservables o = phonon_observables(sq);
  CHECK(o.dx2 == doctest::Approx(std::exp(-2 * s) / 4));
  CHECK(o.dx2_min == doctest::Approx(o.dx2));
  CHECK(o.n_b == doctest::Approx(std::sinh(s) * std::sinh(s)));
}

TEST_CASE("stability report") {
  const PhysicalParams p = decoupled(0.0);
  const StabilityReport st = is_stable(build_model(derive_working_point(p), p));
  CHECK(st.stable);
  CHECK(st.abscissa == doctest::Approx(-p.gamma_b));
  GaussianModel plus;
  plus.drift = Matrix6::Identity();
  const StabilityReport bad = is_stable(plus);
  CHECK_FALSE(bad.stable);
  CHECK(bad.abscissa == doctest::Approx(1.0));
  try {
    steady_covariance(plus);
    FAIL("expected StabilityError");
  } catch (const StabilityError& e) {
    CHECK(e.abscissa() == doctest::Approx(1.0));
  }
}

TEST_CASE("reference point steady state") {
  const PhysicalParams p = reference_params();
  const GaussianModel m = build_model(derive_working_point(p), p);
  const CovarianceMatrix v = steady_covariance(m);
  CHECK(lyapunov_residual(m, v) <= 1e-10 * m.diffusion.norm());
  const PhononObservables o = phonon_observables(v);
  CHECK(o.n_b == doctest::Approx(0.0941163648988).epsilon(1e-8));
  CHECK(o.dx2 == doctest::Approx(0.143085602216).epsilon(1e-8));
  CHECK(o.dx2 < 0.25);
}

TEST_CASE("covariance evolution") {
  const PhysicalParams p = reference_params();
  const GaussianModel m = build_model(derive_working_point(p), p);
  const CovarianceMatrix v0 = CovarianceMatrix::thermal(2.0, 0.1, 0.2);
  CHECK(evolve_covariance(m, v0, 0.0, 1e-3).v == v0.v);
  const CovarianceMatrix v = evolve_covariance(m, v0, 3.0, 1e-3);
  CHECK((v.v - v.v.transpose()).norm() == 0.0);
  // a finite-difference check of the first step direction
  const double h = 1e-6;
  const CovarianceMatrix vh = evolve_covariance(m, v0, h, h);
  CHECK(((vh.v - v0.v) / h - covariance_rhs(m, v0.v)).norm() <= 1e-4 * covariance_rhs(m, v0.v).norm());
}

TEST_CASE("decoupled relaxation from a hotter thermal state") {
  PhysicalParams p = decoupled(1.0);
  p.gamma_b = 0.05;
  const GaussianModel m = build_model(derive_working_point(p), p);
  for (double t : {2.0, 10.0}) {
    const CovarianceMatrix v = evolve_covariance(m, CovarianceMatrix::thermal(4.0), t, 1e-3);
    CHECK(v.v(0, 0) == doctest::Approx(1.5 + 3.0 * std::exp(-2 * p.gamma_b * t)).epsilon(1e-9));
  }
}

TEST_CASE("covariance evolution reaches the Lyapunov steady state") {
  // damping scaled up so the run is short; the t = 50 / gamma_b check at the
  // physical damping lives in the acceptance suite
  PhysicalParams p = reference_params();
  p.gamma_b = 0.01;
  const GaussianModel m = build_model(derive_working_point(p), p);
  REQUIRE(is_stable(m).stable);
  const CovarianceMatrix ss = steady_covariance(m);
  const CovarianceMatrix v = evolve_covariance(m, CovarianceMatrix::vacuum(), 50.0 / p.gamma_b, 1e-3);
  CHECK((v.v - ss.v).norm() <= 1e-8);
}

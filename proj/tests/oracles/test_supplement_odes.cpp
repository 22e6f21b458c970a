#include <random>

#include <doctest.h>

#include "magnomech/gaussian.hpp"
#include "oracles/supplement_odes.hpp"
#include "support/fixtures.hpp"

using namespace magnomech;

TEST_CASE("drift part matches the component-wise covariance equations on random symmetric V") {
  std::mt19937 rng(20240611);
  const PhysicalParams points[] = {
      fixtures::with_drives(200, 400, 0.0, 1.69),
      fixtures::with_drives(300, 400, 0.0, 1.69),
      fixtures::with_drives(500, 400, 0.3, 1.2),
  };
  for (const auto& base : points) {
    PhysicalParams p = base;
    // a complex drive phase makes every G^i term nonzero
    p.omega_cap_m = std::polar(std::abs(p.omega_cap_m), 0.7);
    const WorkingPoint wp = derive_working_point(p);
    const GaussianModel m = build_model(wp, p);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Matrix6 v = fixtures::random_symmetric(rng);
      const Matrix6 lib = covariance_rhs(m, v) - m.diffusion;
      const Matrix6 lit = oracle::supplement_rhs(wp, p, v, false);
      worst = std::max(worst, (lib - lit).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("supplement diffusion variant reproduces the component-wise constant terms") {
  std::mt19937 rng(7);
  PhysicalParams p = fixtures::with_drives(200, 400, 0.0, 1.69);
  p.nbar0 = 2.5;
  const WorkingPoint wp = derive_working_point(p);
  const GaussianModel m = build_model(wp, p, DiffusionVariant::supplement);
  for (int k = 0; k < 20; ++k) {
    const Matrix6 v = fixtures::random_symmetric(rng);
    CHECK((covariance_rhs(m, v) - oracle::supplement_rhs(wp, p, v, true)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("standard diffusion keeps the vacuum of an uncoupled magnon stationary") {
  PhysicalParams p = fixtures::with_drives(0, 0, 0.0, 1.0);
  p.nbar0 = 0.0;
  const WorkingPoint wp = derive_working_point(p);
  const Matrix6 vac = CovarianceMatrix::vacuum().v;
  CHECK(covariance_rhs(build_model(wp, p), vac).cwiseAbs().maxCoeff() <= 1e-15);
  // the component-wise constants do not
  CHECK(covariance_rhs(build_model(wp, p, DiffusionVariant::supplement), vac)(2, 2) == doctest::Approx(0.5));
}

TEST_CASE("real effective couplings confine G terms to the pattern of the component-wise equations") {
  // Delta_c = Delta_m = 0 with real drives makes c and m purely imaginary, so
  // G_bc is imaginary; rotate the drive phases so both G are real instead.
  PhysicalParams p = fixtures::with_drives(300, 400, 0.0, 0.0);
  p.omega_cap_c = Complex{0.0, 300.0};
  p.omega_cap_m = Complex{0.0, -400.0};
  const WorkingPoint wp = derive_working_point(p);
  REQUIRE(std::abs(wp.g_cap_bc.imag()) < 1e-15);
  REQUIRE(std::abs(wp.g_cap_bm.imag()) < 1e-15);
  const Matrix6 a = build_model(wp, p).drift;
  // X_b couples only into the Y quadratures of magnon and photon
  CHECK(a(2, 0) == 0.0);
  CHECK(a(4, 0) == 0.0);
  CHECK(a(3, 0) != 0.0);
  CHECK(a(5, 0) != 0.0);
  CHECK(a(1, 3) == 0.0);
  CHECK(a(1, 5) == 0.0);
}

#include <random>

#include <doctest.h>

#include "magnomech/errors.hpp"
#include "magnomech/lyapunov.hpp"

using namespace magnomech;

TEST_CASE("pure damping with unit diffusion") {
  const Eigen::MatrixXd a = -0.5 * Eigen::MatrixXd::Identity(6, 6);
  const auto sol = solve_lyapunov(a, Eigen::MatrixXd::Identity(6, 6));
  CHECK((sol.x - Eigen::MatrixXd::Identity(6, 6)).norm() <= 1e-14);
}

TEST_CASE("random stable drifts satisfy the equation to round-off") {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  for (int k = 0; k < 20; ++k) {
    Eigen::MatrixXd a(6, 6), b(6, 6);
    for (int i = 0; i < 36; ++i) {
      a(i) = g(rng);
      b(i) = g(rng);
    }
    const double shift = a.eigenvalues().real().maxCoeff() + 0.1;
    a -= shift * Eigen::MatrixXd::Identity(6, 6);
    const Eigen::MatrixXd q = b * b.transpose();
    const auto sol = solve_lyapunov(a, q);
    CHECK(sol.residual <= 1e-10 * q.norm());
    CHECK((sol.x - sol.x.transpose()).norm() == 0.0);
  }
}

TEST_CASE("Kronecker operator matches the direct map") {
  std::mt19937 rng(8);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(4, 4), x(4, 4);
  for (int i = 0; i < 16; ++i) {
    a(i) = g(rng);
    x(i) = g(rng);
  }
  const Eigen::MatrixXd k = lyapunov_operator(a);
  const Eigen::MatrixXd direct = a * x + x * a.transpose();
  const Eigen::VectorXd vx = Eigen::Map<const Eigen::VectorXd>(x.data(), 16);
  const Eigen::VectorXd vd = Eigen::Map<const Eigen::VectorXd>(direct.data(), 16);
  CHECK((k * vx - vd).norm() <= 1e-12);
}

TEST_CASE("singular operator and shape errors") {
  CHECK_THROWS_AS(solve_lyapunov(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Identity(2, 2)), NumericError);
  CHECK_THROWS_AS(solve_lyapunov(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(3, 3)),
                  InvalidParameter);
}

#include "magnomech/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "magnomech/errors.hpp"
#include "magnomech/symplectic.hpp"

namespace magnomech {

namespace {

void require_physical(const Eigen::MatrixXd& v, const char* what) {
  const double margin = uncertainty_margin(v);
  if (margin < -kPhysicalityTolerance) {
    std::ostringstream os;
    os << what << ": covariance violates the uncertainty relation (min eig of V + i Omega/2 = "
       << margin << ")";
    throw InvalidState(os.str());
  }
}

Eigen::MatrixXd pair_block(const Matrix6& v, int i, int j) {
  const int idx[4] = {2 * i, 2 * i + 1, 2 * j, 2 * j + 1};
  Eigen::MatrixXd out(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out(r, c) = v(idx[r], idx[c]);
  }
  return out;
}

}  // namespace

double min_symplectic_eigenvalue(const Eigen::MatrixXd& v) {
  const auto modes = static_cast<int>(v.rows() / 2);
  const Eigen::MatrixXd m = symplectic_form(modes) * v;
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  double nu = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    nu = std::min(nu, std::abs(es.eigenvalues()(k).imag()));
  }
  return nu;
}

double log_negativity_from_nu(double nu) { return std::max(0.0, -std::log2(2.0 * nu)); }

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& v, int mode) {
  Eigen::MatrixXd out = v;
  const int y = 2 * mode + 1;
  out.row(y) *= -1.0;
  out.col(y) *= -1.0;
  return out;
}

double log_negativity_pair(const CovarianceMatrix& v, Mode i, Mode j) {
  if (i == j) throw InvalidParameter("log_negativity_pair: modes must differ");
  const Eigen::MatrixXd block = pair_block(v.v, static_cast<int>(i), static_cast<int>(j));
  require_physical(block, "log_negativity_pair");
  // P_{i|j} = diag(1, -1, 1, 1): momentum flip on the first mode of the pair
  return log_negativity_from_nu(min_symplectic_eigenvalue(partial_transpose(block, 0)));
}

double log_negativity_one_vs_two(const CovarianceMatrix& v, Mode i) {
  const Eigen::MatrixXd full = v.v;
  require_physical(full, "log_negativity_one_vs_two");
  return log_negativity_from_nu(
      min_symplectic_eigenvalue(partial_transpose(full, static_cast<int>(i))));
}

EntanglementReport residual_contangle(const CovarianceMatrix& v) {
  require_physical(v.v, "residual_contangle");
  EntanglementReport r;
  r.e_bm = log_negativity_pair(v, Mode::phonon, Mode::magnon);
  r.e_bc = log_negativity_pair(v, Mode::phonon, Mode::photon);
  r.e_mc = log_negativity_pair(v, Mode::magnon, Mode::photon);
  r.e_1v2 = {log_negativity_one_vs_two(v, Mode::phonon),
             log_negativity_one_vs_two(v, Mode::magnon),
             log_negativity_one_vs_two(v, Mode::photon)};
  const auto sq = [](double x) { return x * x; };
  r.residual = {sq(r.e_1v2[0]) - sq(r.e_bm) - sq(r.e_bc),
                sq(r.e_1v2[1]) - sq(r.e_bm) - sq(r.e_mc),
                sq(r.e_1v2[2]) - sq(r.e_bc) - sq(r.e_mc)};
  r.r_min = std::max(0.0, std::min({r.residual[0], r.residual[1], r.residual[2]}));
  return r;
}

}  // namespace magnomech

#include "magnomech/oracle_suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "magnomech/errors.hpp"
#include "magnomech/fock.hpp"
#include "magnomech/gaussian.hpp"
#include "magnomech/reduced.hpp"

namespace magnomech {

namespace {

using Clock = std::chrono::steady_clock;

OracleCheck timed(std::string suite, std::string name, const std::function<void(OracleCheck&)>& body) {
  OracleCheck c;
  c.suite = std::move(suite);
  c.name = std::move(name);
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return c;
}

PhysicalParams damped(double gamma_b, double gamma_m, double gamma_c, double nbar0) {
  PhysicalParams p;
  p.gamma_b = gamma_b;
  p.gamma_m = gamma_m;
  p.gamma_c = gamma_c;
  p.nbar0 = nbar0;
  return p;
}

std::vector<OracleCheck> decay_suite() {
  return {timed("decay", "single phonon |1> decays as exp(-2 gamma_b t)", [](OracleCheck& c) {
    const PhysicalParams p = damped(0.1, 0.1, 0.1, 0.0);
    WorkingPoint wp;
    wp.omega_b_prime = 1.0;
    TruncationSpec t{{{Mode::phonon, 2, 1}}};
    std::vector<double> times;
    for (int i = 0; i <= 20; ++i) times.push_back(0.5 * i);
    const auto traj = sample_lindblad(LinearizedHamiltonian{wp}, p, t, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double expected = std::exp(-2.0 * p.gamma_b * times[i]);
      c.error = std::max(c.error, std::abs(traj[i].number(Mode::phonon) - expected));
    }
    c.tolerance = 1e-7;
    c.pass = c.error <= c.tolerance;
    c.detail = "max |<n>(t) - exp(-2 gamma_b t)| over t in [0, 10]";
  })};
}

std::vector<OracleCheck> parametric_suite() {
  return {timed("parametric", "chi-only phonon matches the reduced moment system with zeta = 0",
                [](OracleCheck& c) {
    const PhysicalParams p = damped(0.1, 0.1, 0.1, 0.0);
    WorkingPoint wp;
    wp.chi = 0.1;
    wp.omega_b_prime = 1.0 + 2.0 * wp.chi;
    const SteadyMoments ref = steady_moments(ZetaSet{}, wp, p);
    TruncationSpec t{{{Mode::phonon, 8, 0}}, 1e-6};
    const LindbladResult res = integrate_lindblad(LinearizedHamiltonian{wp}, p, t, 200.0);
    const double dn = std::abs(res.moments.number(Mode::phonon) - ref.n_b) / ref.n_b;
    const double db2 = std::abs(res.moments.square(Mode::phonon) - ref.b2) / std::abs(ref.b2);
    c.error = std::max(dn, db2);
    c.tolerance = 1e-3;
    c.pass = c.error <= c.tolerance;
    std::ostringstream os;
    os << "<n> = " << res.moments.number(Mode::phonon) << " (ref " << ref.n_b << "), |<b^2>| = "
       << std::abs(res.moments.square(Mode::phonon)) << " (ref " << std::abs(ref.b2) << ")";
    c.detail = os.str();
  })};
}

/// Two-mode phonon-magnon instance shared by the Gaussian check and the tests.
std::vector<OracleCheck> gaussian_suite() {
  return {timed("gaussian-check", "phonon-magnon second moments match the Lyapunov steady state",
                [](OracleCheck& c) {
    const PhysicalParams p = damped(0.1, 0.2, 0.2, 0.1);
    WorkingPoint wp;
    wp.chi = 0.05;
    wp.omega_b_prime = 1.0 + 2.0 * wp.chi;
    wp.delta_m_prime = 1.0;
    wp.delta_c_prime = 1.0;
    wp.g_cap_bm = Complex{0.05, 0.0};
    const CovarianceMatrix ref = steady_covariance(build_model(wp, p));
    const Eigen::MatrixXd ref4 = ref.v.topLeftCorner(4, 4);

    TruncationSpec t{{{Mode::phonon, 8, 0}, {Mode::magnon, 6, 0}}};
    const LindbladResult res = integrate_lindblad(LinearizedHamiltonian{wp}, p, t, 120.0);
    const Eigen::MatrixXd v = res.moments.covariance();
    constexpr double floor = 1e-3;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double scale = std::max(std::abs(ref4(i, j)), floor);
        c.error = std::max(c.error, std::abs(v(i, j) - ref4(i, j)) / scale);
      }
    }
    c.tolerance = 0.01;
    c.pass = c.error <= c.tolerance;
    std::ostringstream os;
    os << "entrywise relative error (entries below " << floor
       << " compared absolutely); truncation delta " << res.convergence_delta;
    c.detail = os.str();
  })};
}

OracleCheck working_point_check(const std::string& name, const PhysicalParams& p, bool expect_negative_b) {
  return timed("working-point", name, [&](OracleCheck& c) {
    TruncationSpec t{{{Mode::phonon, 2, 0}, {Mode::magnon, p.omega_cap_m == 0.0 ? 2 : 3, 0}, {Mode::photon, 3, 0}}};
    const double t_end = 8.0 / std::min({p.gamma_b, p.gamma_m, p.gamma_c});
    const WorkingPointValidation v = validate_working_point(p, t, t_end);
    c.error = std::max({v.deviation_c, v.deviation_m, v.deviation_b});
    c.tolerance = v.tolerance;
    c.pass = v.pass;
    std::ostringstream os;
    os << "|<c>| = " << std::abs(v.measured_c) << " (pred " << std::abs(v.predicted.c_bar)
       << "), |<m>| = " << std::abs(v.measured_m) << " (pred " << std::abs(v.predicted.m_bar)
       << "), Re<b> = " << v.measured_b.real() << " (pred " << v.predicted.b_bar.real() << ")";
    if (expect_negative_b) {
      const bool negative = v.measured_b.real() < 0.0 && v.predicted.b_bar.real() < 0.0;
      c.pass = c.pass && negative;
      os << (negative ? "; b is negative" : "; b is NOT negative");
    }
    c.detail = os.str();
  });
}

std::vector<OracleCheck> working_point_suite() {
  std::vector<OracleCheck> out;

  PhysicalParams zero = damped(0.02, 0.1, 0.1, 0.0);
  zero.omega_cap_c = 0.0;
  zero.omega_cap_m = 0.0;
  out.push_back(working_point_check("no drive gives vanishing amplitudes", zero, false));

  PhysicalParams photon = damped(0.02, 0.1, 0.1, 0.0);
  photon.delta_c = 1.0;
  photon.delta_m = 0.0;
  photon.omega_cap_c = 0.3;
  photon.omega_cap_m = 0.0;
  out.push_back(working_point_check("photon-only drive matches Omega_c / (i gamma_c - Delta_c)", photon, false));

  PhysicalParams both = damped(0.02, 0.1, 0.1, 0.0);
  both.delta_c = 1.0;
  both.delta_m = 1.0;
  both.g_bc = 0.01;
  both.g_bm = 0.01;
  both.omega_cap_c = 0.2;
  both.omega_cap_m = 0.2;
  out.push_back(working_point_check("two weak drives reproduce c, m and a negative b", both, true));
  return out;
}

}  // namespace

std::vector<std::string_view> oracle_suite_names() {
  return {"decay", "parametric", "gaussian-check", "working-point", "all"};
}

std::vector<OracleCheck> run_oracle_suite(std::string_view suite) {
  std::vector<OracleCheck> out;
  const bool all = suite == "all";
  bool known = all;
  const auto add = [&](std::string_view name, std::vector<OracleCheck> (*fn)()) {
    if (all || suite == name) {
      known = true;
      for (auto& c : fn()) out.push_back(std::move(c));
    }
  };
  add("decay", decay_suite);
  add("parametric", parametric_suite);
  add("gaussian-check", gaussian_suite);
  add("working-point", working_point_suite);
  if (!known) throw InvalidParameter("unknown oracle suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace magnomech

#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta integrator with elementary
// step-size control, templated over any Eigen dense state (real or complex,
// fixed or dynamic size).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>

#include <Eigen/Core>

#include "magnomech/errors.hpp"

namespace magnomech {

struct DopriOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.0;  ///< <= 0 selects a step from the initial slope
  double max_step = std::numeric_limits<double>::infinity();
  /// Smallest step relative to max(1, |t|) before the integration gives up.
  double min_relative_step = 1e-13;
  std::size_t max_steps = 50'000'000;
};

struct DopriStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
  double last_step = 0.0;
};

namespace detail {

struct NoOpAccept {
  template <class State>
  void operator()(double, State&) const noexcept {}
};

template <class State>
double scaled_error(const State& err, const State& y0, const State& y1, double atol, double rtol) {
  const auto scale = (atol + rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).eval();
  return (err.cwiseAbs().array() / scale).maxCoeff();
}

}  // namespace detail

/// Integrates dy/dt = f(t, y) from t0 to t1 (t1 >= t0) and returns y(t1).
///
/// `rhs(t, y, dy)` writes the derivative into `dy`. `on_accept(t, y)` runs
/// after every accepted step and may project `y` (e.g. re-symmetrize) or
/// throw to abort. Throws IntegrationError when the step size collapses
/// below the minimum or the step budget is exhausted.
template <class State, class Rhs, class OnAccept = detail::NoOpAccept>
State integrate_dopri5(Rhs&& rhs, State y, double t0, double t1, const DopriOptions& opt,
                       DopriStats* stats = nullptr, OnAccept&& on_accept = {}) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  DopriStats local;
  DopriStats& st = stats ? *stats : local;
  if (!(t1 >= t0)) throw IntegrationError("integrate_dopri5: t1 < t0");
  if (t1 == t0) return y;

  State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y;
  State tmp = y, y_new = y, err = y;

  double t = t0;
  rhs(t, y, k1);
  ++st.rhs_evals;

  double h = opt.initial_step;
  if (!(h > 0.0)) {
    const double d0 = y.cwiseAbs().maxCoeff();
    const double d1 = k1.cwiseAbs().maxCoeff();
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  }
  h = std::min({h, opt.max_step, t1 - t0});

  while (t < t1) {
    if (st.accepted + st.rejected >= opt.max_steps) {
      throw IntegrationError("integrate_dopri5: step budget exhausted");
    }
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }

    tmp.noalias() = y + h * (a21 * k1);
    rhs(t + c2 * h, tmp, k2);
    tmp.noalias() = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, tmp, k3);
    tmp.noalias() = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, tmp, k4);
    tmp.noalias() = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, tmp, k5);
    tmp.noalias() = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, tmp, k6);
    y_new.noalias() = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    rhs(t + h, y_new, k7);
    st.rhs_evals += 6;

    err.noalias() = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = detail::scaled_error(err, y, y_new, opt.atol, opt.rtol);

    if (std::isfinite(en) && en <= 1.0) {
      t = last ? t1 : t + h;
      y.swap(y_new);
      k1.swap(k7);
      ++st.accepted;
      st.last_step = h;
      on_accept(t, y);
      const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      h = std::min(h * fac, opt.max_step);
    } else {
      ++st.rejected;
      const double fac = std::isfinite(en) ? std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9) : 0.1;
      h *= fac;
      if (h < opt.min_relative_step * std::max(1.0, std::abs(t))) {
        std::ostringstream os;
        os << "integrate_dopri5: step size underflow at t = " << t << " (h = " << h << ")";
        throw IntegrationError(os.str());
      }
    }
  }
  return y;
}

}  // namespace magnomech

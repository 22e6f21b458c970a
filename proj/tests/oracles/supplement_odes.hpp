#pragma once

// The 21 covariance equations of motion written out term by term, indices
// 1-based. Independent of the drift/diffusion assembly in the
// library; only the working-point numbers are shared.

#include "magnomech/gaussian.hpp"
#include "magnomech/model.hpp"

namespace oracle {

inline magnomech::Matrix6 supplement_rhs(const magnomech::WorkingPoint& wp,
                                         const magnomech::PhysicalParams& p,
                                         const magnomech::Matrix6& vm, bool with_constants) {
  const auto V = [&](int i, int j) { return vm(i - 1, j - 1); };
  const double gb = p.gamma_b, gm = p.gamma_m, gc = p.gamma_c, n0 = p.nbar0;
  const double chi = wp.chi, wp_ = wp.omega_b_prime;
  const double Dm = wp.delta_m_prime, Dc = wp.delta_c_prime;
  const double Gmr = wp.g_cap_bm.real(), Gmi = wp.g_cap_bm.imag();
  const double Gcr = wp.g_cap_bc.real(), Gci = wp.g_cap_bc.imag();
  const double kb = with_constants ? gb + 2 * gb * n0 + 0.5 : 0.0;
  const double km = with_constants ? gm + 0.5 : 0.0;
  const double kc = with_constants ? gc + 0.5 : 0.0;

  magnomech::Matrix6 d;
  const auto set = [&](int i, int j, double x) { d(i - 1, j - 1) = d(j - 1, i - 1) = x; };

  set(1, 1, -2 * gb * V(1, 1) + (2 * wp_ - 4 * chi) * V(1, 2) + kb);
  set(2, 2, -(2 * wp_ + 4 * chi) * V(1, 2) - 2 * gb * V(2, 2) - 4 * Gmr * V(2, 3) - 4 * Gmi * V(2, 4) -
                4 * Gcr * V(2, 5) - 4 * Gci * V(2, 6) + kb);
  set(3, 3, 4 * Gmi * V(1, 3) - 2 * gm * V(3, 3) + 2 * Dm * V(3, 4) + km);
  set(4, 4, -4 * Gmr * V(1, 4) - 2 * Dm * V(3, 4) - 2 * gm * V(4, 4) + km);
  set(5, 5, 4 * Gci * V(1, 5) - 2 * gc * V(5, 5) + 2 * Dc * V(5, 6) + kc);
  set(6, 6, -4 * Gcr * V(1, 6) - 2 * gc * V(6, 6) - 2 * Dc * V(5, 6) + kc);
  set(1, 2, -(2 * chi + wp_) * V(1, 1) - (2 * chi - wp_) * V(2, 2) - 2 * gb * V(1, 2) -
                2 * Gmr * V(1, 3) - 2 * Gmi * V(1, 4) - 2 * Gcr * V(1, 5) - 2 * Gci * V(1, 6));
  set(1, 3, 2 * Gmi * V(1, 1) - (gb + gm) * V(1, 3) + Dm * V(1, 4) + (-2 * chi + wp_) * V(2, 3));
  set(1, 4, -2 * Gmr * V(1, 1) - Dm * V(1, 3) - (gb + gm) * V(1, 4) - (2 * chi - wp_) * V(2, 4));
  set(1, 5, 2 * Gci * V(1, 1) - (gc + gb) * V(1, 5) + Dc * V(1, 6) + (-2 * chi + wp_) * V(2, 5));
  set(1, 6, -2 * Gcr * V(1, 1) - Dc * V(1, 5) - (gc + gb) * V(1, 6) - (2 * chi - wp_) * V(2, 6));
  set(2, 3, -2 * Gmr * V(3, 3) + 2 * Gmi * V(1, 2) - (2 * chi + wp_) * V(1, 3) - (gb + gm) * V(2, 3) +
                Dm * V(2, 4) - 2 * Gmi * V(3, 4) - 2 * Gcr * V(3, 5) - 2 * Gci * V(3, 6));
  set(2, 4, -2 * Gmi * V(4, 4) - 2 * Gmr * V(1, 2) - (2 * chi + wp_) * V(1, 4) - Dm * V(2, 3) -
                (gb + gm) * V(2, 4) - 2 * Gmr * V(3, 4) - 2 * Gcr * V(4, 5) - 2 * Gci * V(4, 6));
  set(2, 5, -2 * Gcr * V(5, 5) + 2 * Gci * V(1, 2) - (2 * chi + wp_) * V(1, 5) - (gc + gb) * V(2, 5) +
                Dc * V(2, 6) - 2 * Gmr * V(3, 5) - 2 * Gmi * V(4, 5) - 2 * Gci * V(5, 6));
  set(2, 6, -2 * Gci * V(6, 6) - 2 * Gcr * V(1, 2) + (-2 * chi - wp_) * V(1, 6) - Dc * V(2, 5) -
                (gc + gb) * V(2, 6) - 2 * Gmr * V(3, 6) - 2 * Gmi * V(4, 6) - 2 * Gcr * V(5, 6));
  set(3, 4, -Dm * V(3, 3) + Dm * V(4, 4) - 2 * Gmr * V(1, 3) + 2 * Gmi * V(1, 4) - 2 * gm * V(3, 4));
  set(3, 5, 2 * Gci * V(1, 3) + 2 * Gmi * V(1, 5) - (gc + gm) * V(3, 5) + Dc * V(3, 6) + Dm * V(4, 5));
  set(3, 6, -2 * Gcr * V(1, 3) + 2 * Gmi * V(1, 6) - Dc * V(3, 5) - (gc + gm) * V(3, 6) + Dm * V(4, 6));
  set(4, 5, 2 * Gci * V(1, 4) - 2 * Gmr * V(1, 5) - Dm * V(3, 5) - (gc + gm) * V(4, 5) + Dc * V(4, 6));
  set(4, 6, -2 * Gcr * V(1, 4) - 2 * Gmr * V(1, 6) - Dm * V(3, 6) - Dc * V(4, 5) - (gc + gm) * V(4, 6));
  set(5, 6, -Dc * V(5, 5) + Dc * V(6, 6) - 2 * Gcr * V(1, 5) + 2 * Gci * V(1, 6) - 2 * gc * V(5, 6));
  return d;
}

}  // namespace oracle

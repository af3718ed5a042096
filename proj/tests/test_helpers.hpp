#pragma once

#include <random>

#include "gpr/model.hpp"

namespace gpr::testing {

inline std::mt19937& rng() {
  static std::mt19937 gen(20240811u);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

// O(1) random state with moderate deformation, safe for energy inversion
inline Primitive random_primitive(const MaterialParams& par, double amp = 0.3) {
  Primitive prim;
  prim.rho = uniform(0.7, 1.5);
  for (int i = 0; i < 3; ++i) prim.u[i] = uniform(-amp, amp);
  prim.A = Mat3::identity();
  prim.phi = Mat3{};
  for (int i = 0; i < 9; ++i) {
    prim.A.m[i] += uniform(-amp, amp);
    prim.phi.m[i] = uniform(-amp, amp);
  }
  for (int i = 0; i < 3; ++i) {
    prim.J[i] = uniform(-amp, amp);
    prim.psi[i] = uniform(-amp, amp);
  }
  prim.p = uniform(0.6, 1.8);
  prim.T = temperature(prim.rho, prim.p, par);
  return prim;
}

// central finite difference of a scalar functional wrt one conserved slot
template <typename F>
double fd_slot(F&& f, State q, int slot, double h = 1e-6) {
  State qp = q, qm = q;
  qp[slot] += h;
  qm[slot] -= h;
  return (f(qp) - f(qm)) / (2.0 * h);
}

}  // namespace gpr::testing

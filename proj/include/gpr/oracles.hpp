#pragma once

#include <string>
#include <vector>

#include "gpr/model.hpp"

namespace gpr {
namespace oracle {

struct RiemannState {
  double rho = 1.0;
  double un = 0.0;  // normal velocity
  double ut = 0.0;  // tangential velocity
  double p = 1.0;
};

struct StarRegion {
  double p = 0.0, u = 0.0;
  int iterations = 0;
};

// two-nonlinear-wave pressure function solved by Newton to 1e-12
StarRegion euler_star(const RiemannState& left, const RiemannState& right, double gamma);

// full similarity solution sampled at xi = x/t
RiemannState euler_exact(const RiemannState& left, const RiemannState& right, double gamma,
                         double xi);

// 1D second-order MUSCL-Hancock TVD references
enum class System1d { euler, euler_radial, gpr };

struct Profile1d {
  std::vector<double> x;
  std::vector<double> rho, u1, u2, p;
  std::vector<double> A11, A12, A21, A22, J1, T;
};

struct Case1d {
  // piecewise-constant initial data
  double rhoL = 1, rhoR = 1, u1L = 0, u1R = 0, u2L = 0, u2R = 0, pL = 1, pR = 1;
  double xd = 0.0;       // discontinuity (or nothing for smooth data)
  double x0 = -0.5, x1 = 0.5;
  double time = 0.2;
  double cflOracle = 0.45;
  MaterialParams par;    // gpr system only
};

Profile1d reference_1d(const Case1d& c, System1d sys, int n);

// First Stokes closed form u2 = 0.1 erf(x / (2 sqrt(mu t)))
double stokes_first(double x, double t, double mu);

}  // namespace oracle
}  // namespace gpr

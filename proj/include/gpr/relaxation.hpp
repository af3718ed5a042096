#pragma once

#include <vector>

#include "gpr/model.hpp"

namespace gpr {

struct RelaxConfig {
  bool enabled = true;
  double newtonTol = 1e-10;  // absolute residual
  int newtonMaxIter = 50;
  double tauOff = 1e15;  // relaxation treated as switched off above this
};

struct RelaxCellStats {
  int newtonIterations = 0;
};

// implicit integration of dA/dt = -E_A/theta1, dJ/dt = -E_J/theta2 over [0, dt]
// with a two-stage, stiffly accurate, L-stable SDIRK scheme; rho and T are frozen
// parameters. det(A) is an invariant of the flow and is enforced on the result.
RelaxCellStats relax_cell(Mat3& A, Vec3& J, double rho, double T, double dt,
                          const MaterialParams& par, const RelaxConfig& rc, int cellId = -1);

// applies relax_cell to the (A, J) slots of every staged state; T is taken from the
// post-transport energy inversion
int relax_all(std::vector<State>& qStar, const MaterialParams& par, const RelaxConfig& rc,
              double dt);

}  // namespace gpr

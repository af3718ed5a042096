#pragma once

#include <vector>

#include "gpr/mesh.hpp"
#include "gpr/model.hpp"
#include "gpr/sparse.hpp"
#include "gpr/transport.hpp"

namespace gpr {

struct PressureConfig {
  int nPicard = 2;
  double cgTol = 1e-10;
  int cgMaxIterFactor = 10;  // maxiter = factor * n_vertices
  bool jacobi = false;
};

// dual -> primal element transfer q_k = sum_i q_i |T_ki|/|T_k|
std::vector<double> dual_to_primal(const std::vector<double>& cellField, const PrimalMesh& pm,
                                   const DualMesh& dm);

// vertex density by element-area weighting of the transferred field
std::vector<double> vertex_density(const std::vector<double>& rhoElem, const PrimalMesh& pm);

// h at vertices from the current vertex pressure; face value (= dual-cell value)
// is the mean of the two endpoint vertices
void vertex_enthalpy(const std::vector<double>& pVert, const std::vector<double>& rhoVert,
                     const MaterialParams& par, const PrimalMesh& pm,
                     std::vector<double>& hVert, std::vector<double>& hDual);

struct PressureSystem {
  SparseSPD mat;
  std::vector<double> rhs;
  std::vector<int> dirichletRows;
  std::vector<double> dirichletVals;
};

struct PressureInputs {
  // per primal element (transferred)
  std::vector<double> hElem;
  std::vector<Vec2> mElem;      // momentum entering the Delta-t h m.grad z term
  std::vector<double> eStarElem;
  std::vector<double> e2Elem;
  std::vector<double> e3456Elem;
  // vertex pressure at t^n (the E1^n mass-matrix term)
  std::vector<double> pVertOld;
  // boundary data
  std::vector<double> hDual;
  std::vector<Vec2> mBoundary;  // per dual cell: momentum used in the boundary integral
};

void assemble(const PressureInputs& in, const PrimalMesh& pm, const DualMesh& dm,
              const MaterialParams& par, const BcMap& bcs, double dt, PressureSystem& sys);

struct PressureStageStats {
  int picardIterations = 0;
  int cgIterationsTotal = 0;
  double lastCgResidual = 0.0;
};

// full Picard stage: updates the dual momentum slots of qStar in place, advances the
// vertex pressure field, and returns the final vertex/dual enthalpies for the
// correction stage
PressureStageStats picard_pressure_stage(std::vector<State>& qStar, std::vector<double>& pVert,
                                         const PrimalMesh& pm, const DualMesh& dm,
                                         const MaterialParams& par, const BcMap& bcs,
                                         const PressureConfig& pc, double dt,
                                         std::vector<double>& hVertOut,
                                         std::vector<double>& hDualOut);

// element-wise energy correction E_k^{n+1} = E_k^* - dt/|T_k| sum_faces |G| h (m.n),
// transferred back to the dual cells (writes the energy slot of qStar)
void energy_correction(std::vector<State>& qStar, const std::vector<double>& hDual,
                       const PrimalMesh& pm, const DualMesh& dm, const MaterialParams& par,
                       const BcMap& bcs, double dt);

}  // namespace gpr

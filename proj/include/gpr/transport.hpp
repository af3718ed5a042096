#pragma once

#include <map>
#include <vector>

#include "gpr/mesh.hpp"
#include "gpr/model.hpp"

namespace gpr {

enum class BcKind { transmissive, dirichlet, slip_wall, no_slip_wall, pressure };

// one record per boundary tag; serves both the FV ghost states and the
// pressure-stage boundary treatment
struct BoundaryCondition {
  BcKind kind = BcKind::transmissive;
  State exterior{};          // dirichlet exterior state
  double exteriorPlag = 1.0; // matching lagged pressure
  Vec3 wallVelocity{};       // moving no-slip wall
  double pBc = 0.0;          // strong pressure value for BcKind::pressure
};

using BcMap = std::map<int, BoundaryCondition>;

enum class Limiter { none, minmod, eno };

struct TransportConfig {
  double cfl = 0.5;
  int order = 2;
  Limiter limiter = Limiter::eno;
  bool limitPrimitive = true;  // limit_variables = primitive|conserved
  double cAlpha = 0.0;         // artificial viscosity coefficient
  double maxDt = 1e30;
  bool eosInDt = false;        // include sqrt(gamma p/rho) in the CFL bound
};

// per-dual-cell conserved arrays plus the staged output written by transport_step
struct FieldSet {
  std::vector<State> q;      // Q^n
  std::vector<State> qStar;  // (rho^{n+1}, m*, A*, phi^{n+1}, J*, psi^{n+1}, E*)
  std::vector<double> plag;  // lagged dual-cell pressure (face mean of vertex p^n)
};

// ADER predictor data
struct Predictor {
  std::vector<RecState> rec;                  // per cell
  std::vector<RecState> gradX, gradY;         // per primal element
  std::vector<State> tdotGen0, tdotGen1;      // per cell, per generator
  std::vector<State> tdot;                    // area-weighted cell time derivative
  std::vector<State> half;                    // half-time evolved cell states
  std::vector<State> gradHX, gradHY;          // element gradients of the evolved field
};

double compute_dt(const FieldSet& f, const DualMesh& dm, const MaterialParams& par,
                  const TransportConfig& tc);

// per-element gradients of an arbitrary per-cell array (plane through the three
// incident dual-cell centroids; Crouzeix-Raviart on uniform grids)
template <typename StateT>
void spatial_gradients(const std::vector<StateT>& cellVals, const PrimalMesh& pm,
                       const DualMesh& dm, std::vector<StateT>& gx, std::vector<StateT>& gy);

void build_predictor(const FieldSet& f, const PrimalMesh& pm, const DualMesh& dm,
                     const MaterialParams& par, const TransportConfig& tc, double dt,
                     Predictor& pred);

// face states (Q-bar, plag-bar) extrapolated to the space-time face midpoint
struct FaceState {
  State q;
  double plag;
};

FaceState limited_extrapolation(const Predictor& pred, const DualMesh& dm,
                                const PrimalMesh& pm, const MaterialParams& par,
                                const TransportConfig& tc, int cell, int tri, const Vec2& faceMid,
                                double dt);

// Rusanov space-time flux over one face; alphaU/artU are per-unit-length speeds
State rusanov_flux(const FaceState& left, const FaceState& right, double etaT, const Vec2& etaX,
                   const MaterialParams& par, double alphaU, double artU);

// segment-path NCP jump D = 1/2 Btilde (Qj - Qi) with 3-point Gauss along the path
State path_jump(const State& qi, const State& qj, const Vec2& eta, const MaterialParams& par);

// writes f.qStar; requires geometry at t^n in dm and the step's space-time geometry
void transport_step(FieldSet& f, const PrimalMesh& pm, const DualMesh& dm,
                    const SpaceTimeGeom& st, const MaterialParams& par,
                    const TransportConfig& tc, const BcMap& bcs, double dt);

// primitive view of a face/cell state with the lagged pressure in the p slot
Primitive face_primitive(const State& q, double plag, const MaterialParams& par);

State ghost_state(const State& inner, double innerPlag, const BoundaryCondition& bc,
                  const Vec2& nUnit, const MaterialParams& par, double& ghostPlag);

}  // namespace gpr

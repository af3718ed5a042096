#pragma once

#include <functional>
#include <map>
#include <vector>

#include "gpr/mesh.hpp"
#include "gpr/tensor.hpp"

namespace gpr {

enum class MotionMode { eulerian, lagrangian_smoothed, prescribed };

struct BoundaryMotion {
  enum class Kind { fixed, fluid, prescribed } kind = Kind::fixed;
  std::function<Vec2(Vec2, double)> velocity;  // for Kind::prescribed: (x, t) -> V
};

struct MotionConfig {
  MotionMode mode = MotionMode::eulerian;
  double zeta = 5.0;
  std::map<int, BoundaryMotion> perTag;  // untagged boundaries default to fixed
  double cgTol = 1e-10;
  int cgMaxIterFactor = 10;  // maxiter = factor * nv
};

struct MeshVelocity {
  std::vector<Vec2> v;  // per vertex
};

// Laplace problem with Dirichlet data from the per-tag conditions
MeshVelocity velocity_prescribed(const PrimalMesh& pm, const MotionConfig& mc, double t);

// Helmholtz smoothing V - dt*zeta*Lap(V) = u^n; cellVel holds the dual-cell fluid
// velocity, mapped to vertices by dual-area weighting
MeshVelocity velocity_smoothed(const PrimalMesh& pm, const DualMesh& dm,
                               const std::vector<Vec2>& cellVel, const MotionConfig& mc,
                               double t, double dt);

// X^{n+1} = X^n + dt V^n (validity is enforced when the caller rebuilds geometry)
std::vector<Vec2> advance_mesh(const PrimalMesh& pm, const MeshVelocity& vel, double dt);

// dual-area weighted average of incident dual-cell velocities
std::vector<Vec2> cell_to_vertex_velocity(const PrimalMesh& pm, const DualMesh& dm,
                                          const std::vector<Vec2>& cellVel);

}  // namespace gpr

#include "gpr/motion.hpp"

#include <cmath>

#include "gpr/sparse.hpp"

namespace gpr {

namespace {

// P1 stiffness pattern over the primal triangulation
void build_fe_pattern(const PrimalMesh& pm, SparseSPD& mat) {
  std::vector<std::vector<int>> cols(pm.nv);
  for (int t = 0; t < pm.ntri(); ++t)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) cols[pm.tri[t][a]].push_back(pm.tri[t][b]);
  for (int v = 0; v < pm.nv; ++v) cols[v].push_back(v);
  mat.build_pattern(pm.nv, cols);
}

Vec2 boundary_value(const BoundaryMotion& bm, const Vec2& x, double t, const Vec2& fluid) {
  switch (bm.kind) {
    case BoundaryMotion::Kind::fixed:
      return Vec2{0.0, 0.0};
    case BoundaryMotion::Kind::fluid:
      return fluid;
    case BoundaryMotion::Kind::prescribed:
      return bm.velocity ? bm.velocity(x, t) : Vec2{0.0, 0.0};
  }
  return Vec2{0.0, 0.0};
}

MeshVelocity solve_vertex_system(const PrimalMesh& pm, SparseSPD& mat,
                                 std::vector<double> rhsX, std::vector<double> rhsY,
                                 const std::vector<int>& bnodes,
                                 const std::vector<Vec2>& bvals, const MotionConfig& mc) {
  std::vector<double> bx(bnodes.size()), by(bnodes.size());
  for (size_t i = 0; i < bnodes.size(); ++i) {
    bx[i] = bvals[i].x;
    by[i] = bvals[i].y;
  }
  // the two components share the matrix; eliminate once with x-values then reuse
  SparseSPD matY = mat;
  mat.apply_dirichlet(bnodes, bx, rhsX);
  matY.apply_dirichlet(bnodes, by, rhsY);
  std::vector<double> vx, vy;
  const int maxiter = std::max(100, mc.cgMaxIterFactor * pm.nv);
  cg_solve(mat, rhsX, vx, mc.cgTol, maxiter);
  cg_solve(matY, rhsY, vy, mc.cgTol, maxiter);
  MeshVelocity out;
  out.v.resize(pm.nv);
  for (int v = 0; v < pm.nv; ++v) out.v[v] = Vec2{vx[v], vy[v]};
  return out;
}

}  // namespace

std::vector<Vec2> cell_to_vertex_velocity(const PrimalMesh& pm, const DualMesh& dm,
                                          const std::vector<Vec2>& cellVel) {
  // two-stage area-weighted chain (dual -> element -> vertex); the wider stencil
  // keeps the pure-Lagrangian mesh velocity smooth at grid scale
  std::vector<Vec2> elemVel(pm.ntri(), Vec2{0.0, 0.0});
  for (int t = 0; t < pm.ntri(); ++t) {
    Vec2 s{0.0, 0.0};
    double w = 0.0;
    for (int e = 0; e < 3; ++e) {
      const int fId = pm.triFace[t][e];
      const int gen = (pm.face[fId].tL == t) ? 0 : 1;
      s += dm.genArea[fId][gen] * cellVel[fId];
      w += dm.genArea[fId][gen];
    }
    elemVel[t] = s * (1.0 / w);
  }
  std::vector<Vec2> uv(pm.nv, Vec2{0.0, 0.0});
  for (int v = 0; v < pm.nv; ++v) {
    double wsum = 0.0;
    Vec2 s{0.0, 0.0};
    for (int t : pm.vertTris[v]) {
      s += pm.triArea[t] * elemVel[t];
      wsum += pm.triArea[t];
    }
    if (wsum > 0.0) uv[v] = s * (1.0 / wsum);
  }
  return uv;
}

MeshVelocity velocity_prescribed(const PrimalMesh& pm, const MotionConfig& mc, double t) {
  SparseSPD mat;
  build_fe_pattern(pm, mat);
  for (int tt = 0; tt < pm.ntri(); ++tt)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        mat.add(pm.tri[tt][a], pm.tri[tt][b],
                pm.triArea[tt] * dot(pm.gradLambda[tt][a], pm.gradLambda[tt][b]));

  std::vector<int> bnodes;
  std::vector<Vec2> bvals;
  for (int v = 0; v < pm.nv; ++v) {
    if (pm.vertTag[v] < 0) continue;
    const auto it = mc.perTag.find(pm.vertTag[v]);
    const BoundaryMotion bm = (it != mc.perTag.end()) ? it->second : BoundaryMotion{};
    if (bm.kind == BoundaryMotion::Kind::fluid)
      throw std::runtime_error("velocity_prescribed: tag " + std::to_string(pm.vertTag[v]) +
                               " has no prescribed condition");
    bnodes.push_back(v);
    bvals.push_back(boundary_value(bm, pm.X[v], t, Vec2{}));
  }
  if (bnodes.empty()) {
    // fully periodic mesh: harmonic field with no boundary data is zero
    MeshVelocity out;
    out.v.assign(pm.nv, Vec2{0.0, 0.0});
    return out;
  }
  std::vector<double> rhs(pm.nv, 0.0);
  return solve_vertex_system(pm, mat, rhs, rhs, bnodes, bvals, mc);
}

MeshVelocity velocity_smoothed(const PrimalMesh& pm, const DualMesh& dm,
                               const std::vector<Vec2>& cellVel, const MotionConfig& mc,
                               double t, double dt) {
  if (mc.zeta < 0.0) throw std::domain_error("velocity_smoothed: zeta must be >= 0");
  const std::vector<Vec2> uv = cell_to_vertex_velocity(pm, dm, cellVel);

  SparseSPD mat;
  build_fe_pattern(pm, mat);
  std::vector<double> lumped(pm.nv, 0.0);
  for (int tt = 0; tt < pm.ntri(); ++tt) {
    const double a3 = pm.triArea[tt] / 3.0;
    for (int a = 0; a < 3; ++a) {
      lumped[pm.tri[tt][a]] += a3;
      for (int b = 0; b < 3; ++b)
        mat.add(pm.tri[tt][a], pm.tri[tt][b],
                dt * mc.zeta * pm.triArea[tt] * dot(pm.gradLambda[tt][a], pm.gradLambda[tt][b]));
    }
  }
  for (int v = 0; v < pm.nv; ++v) mat.add(v, v, lumped[v]);

  std::vector<double> rhsX(pm.nv), rhsY(pm.nv);
  for (int v = 0; v < pm.nv; ++v) {
    rhsX[v] = lumped[v] * uv[v].x;
    rhsY[v] = lumped[v] * uv[v].y;
  }
  std::vector<int> bnodes;
  std::vector<Vec2> bvals;
  for (int v = 0; v < pm.nv; ++v) {
    if (pm.vertTag[v] < 0) continue;
    const auto it = mc.perTag.find(pm.vertTag[v]);
    const BoundaryMotion bm = (it != mc.perTag.end()) ? it->second : BoundaryMotion{};
    bnodes.push_back(v);
    bvals.push_back(boundary_value(bm, pm.X[v], t, uv[v]));
  }
  return solve_vertex_system(pm, mat, std::move(rhsX), std::move(rhsY), bnodes, bvals, mc);
}

std::vector<Vec2> advance_mesh(const PrimalMesh& pm, const MeshVelocity& vel, double dt) {
  if (dt <= 0.0) throw std::domain_error("advance_mesh: dt must be positive");
  std::vector<Vec2> Xnew(pm.nv);
  for (int v = 0; v < pm.nv; ++v) Xnew[v] = pm.X[v] + dt * vel.v[v];
  return Xnew;
}

}  // namespace gpr

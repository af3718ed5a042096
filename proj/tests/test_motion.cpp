#include <cmath>

#include "doctest.h"
#include "gpr/motion.hpp"

using namespace gpr;

TEST_CASE("prescribed motion solves the Laplace problem") {
  PrimalMesh pm = make_square_mesh(1.0, 1.0, 8, 8, false, false);
  MotionConfig mc;
  mc.mode = MotionMode::prescribed;

  // zero boundary velocity -> zero field
  for (int tag = 0; tag < 4; ++tag) mc.perTag[tag].kind = BoundaryMotion::Kind::fixed;
  MeshVelocity v = velocity_prescribed(pm, mc, 0.0);
  for (const auto& vv : v.v) CHECK(norm(vv) < 1e-12);

  // uniform boundary velocity -> uniform interior
  for (int tag = 0; tag < 4; ++tag) {
    mc.perTag[tag].kind = BoundaryMotion::Kind::prescribed;
    mc.perTag[tag].velocity = [](Vec2, double) { return Vec2{0.3, -0.1}; };
  }
  v = velocity_prescribed(pm, mc, 0.0);
  for (const auto& vv : v.v) {
    CHECK(vv.x == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(vv.y == doctest::Approx(-0.1).epsilon(1e-9));
  }

  // linear boundary data stays linear (discrete harmonic polynomial)
  for (int tag = 0; tag < 4; ++tag)
    mc.perTag[tag].velocity = [](Vec2 x, double) { return Vec2{x.x + 2.0 * x.y, 0.0}; };
  v = velocity_prescribed(pm, mc, 0.0);
  for (int i = 0; i < pm.nv; ++i)
    CHECK(v.v[i].x == doctest::Approx(pm.X[i].x + 2.0 * pm.X[i].y).epsilon(1e-8));
}

TEST_CASE("smoothed fluid velocity") {
  PrimalMesh pm = make_square_mesh(1.0, 1.0, 10, 10, false, false);
  DualMesh dm = build_dual(pm);
  MotionConfig mc;
  mc.mode = MotionMode::lagrangian_smoothed;
  for (int tag = 0; tag < 4; ++tag) mc.perTag[tag].kind = BoundaryMotion::Kind::fluid;

  // zeta = 0 reproduces the vertex-averaged fluid velocity
  std::vector<Vec2> cellVel(dm.ncells);
  for (int c = 0; c < dm.ncells; ++c) {
    const Vec2 x = dm.node[c];
    cellVel[c] = Vec2{std::sin(3.0 * x.x), std::cos(2.0 * x.y)};
  }
  mc.zeta = 0.0;
  MeshVelocity v = velocity_smoothed(pm, dm, cellVel, mc, 0.0, 0.1);
  const std::vector<Vec2> uv = cell_to_vertex_velocity(pm, dm, cellVel);
  for (int i = 0; i < pm.nv; ++i) {
    CHECK(v.v[i].x == doctest::Approx(uv[i].x).epsilon(1e-10));
    CHECK(v.v[i].y == doctest::Approx(uv[i].y).epsilon(1e-10));
  }

  // uniform velocity is reproduced for any zeta
  for (auto& cv : cellVel) cv = Vec2{0.7, 0.2};
  mc.zeta = 50.0;
  v = velocity_smoothed(pm, dm, cellVel, mc, 0.0, 0.1);
  for (const auto& vv : v.v) {
    CHECK(vv.x == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(vv.y == doctest::Approx(0.2).epsilon(1e-9));
  }

  // high-frequency field with large zeta is damped interiorly
  double maxU = 0.0;
  for (int c = 0; c < dm.ncells; ++c) {
    const Vec2 x = dm.node[c];
    cellVel[c] = Vec2{std::sin(40.0 * x.x) * std::sin(40.0 * x.y), 0.0};
    maxU = std::max(maxU, std::abs(cellVel[c].x));
  }
  mc.zeta = 100.0;
  for (int tag = 0; tag < 4; ++tag) mc.perTag[tag].kind = BoundaryMotion::Kind::fixed;
  v = velocity_smoothed(pm, dm, cellVel, mc, 0.0, 0.1);
  double maxV = 0.0;
  for (int i = 0; i < pm.nv; ++i)
    if (pm.vertTag[i] < 0) maxV = std::max(maxV, std::abs(v.v[i].x));
  CHECK(maxV < maxU);
}

TEST_CASE("advance_mesh") {
  PrimalMesh pm = make_square_mesh(1.0, 1.0, 5, 5, false, false);
  DualMesh dm = build_dual(pm);
  MeshVelocity v;
  v.v.assign(pm.nv, Vec2{0.0, 0.0});
  auto xn = advance_mesh(pm, v, 0.1);
  for (int i = 0; i < pm.nv; ++i) {
    CHECK(xn[i].x == pm.X[i].x);
    CHECK(xn[i].y == pm.X[i].y);
  }
  // rigid translation preserves areas
  v.v.assign(pm.nv, Vec2{1.0, 2.0});
  xn = advance_mesh(pm, v, 0.125);
  const double a0 = pm.triArea[4];
  pm.set_coords(xn);
  dm.rebuild_geometry(pm);
  CHECK(pm.triArea[4] == doctest::Approx(a0).epsilon(1e-14));
  // rotation-like field keeps positivity on a fine step
  for (int i = 0; i < pm.nv; ++i) {
    const Vec2 x = pm.X[i];
    v.v[i] = Vec2{-(x.y - 0.5), x.x - 0.5};
  }
  xn = advance_mesh(pm, v, 0.01);
  CHECK_NOTHROW(pm.set_coords(xn));
}

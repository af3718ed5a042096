#include <cmath>

#include "doctest.h"
#include "gpr/mesh.hpp"
#include "test_helpers.hpp"

using namespace gpr;
using gpr::testing::uniform;

namespace {

// smooth, boundary-respecting random vertex motion
std::vector<Vec2> perturb(const PrimalMesh& pm, double amp, int seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const double a1 = d(gen), a2 = d(gen), b1 = d(gen), b2 = d(gen);
  std::vector<Vec2> xn = pm.X;
  const double lx = pm.domainHi.x - pm.domainLo.x;
  const double ly = pm.domainHi.y - pm.domainLo.y;
  for (int v = 0; v < pm.nv; ++v) {
    const double sx = (pm.X[v].x - pm.domainLo.x) / lx;
    const double sy = (pm.X[v].y - pm.domainLo.y) / ly;
    const double twoPi = 2.0 * std::acos(-1.0);
    xn[v].x += amp * lx * (a1 * std::sin(twoPi * sx) * std::sin(twoPi * sy) +
                           a2 * std::sin(2 * twoPi * sx));
    xn[v].y += amp * ly * (b1 * std::sin(twoPi * sy) * std::sin(twoPi * sx) +
                           b2 * std::sin(2 * twoPi * sy));
  }
  return xn;
}

}  // namespace

TEST_CASE("dual construction on the unit square") {
  // one diagonal: 1 interior dual cell of area 1/3 and 4 boundary cells
  PrimalMesh pm = make_square_mesh(1.0, 1.0, 1, 1, false, false);
  DualMesh dm = build_dual(pm);
  CHECK(dm.ncells == 5);
  int interior = 0;
  double total = 0.0;
  for (int c = 0; c < dm.ncells; ++c) {
    total += dm.area[c];
    if (!dm.isBoundary[c]) {
      ++interior;
      CHECK(dm.area[c] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    }
  }
  CHECK(interior == 1);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("dual cell closure and partition") {
  PrimalMesh pm = make_square_mesh(1.3, 0.9, 7, 5, false, false);
  DualMesh dm = build_dual(pm);

  double total = 0.0;
  for (int c = 0; c < dm.ncells; ++c) total += dm.area[c];
  CHECK(total == doctest::Approx(pm.domainArea).epsilon(1e-12));

  // per-cell closed polygon: weighted normals sum to zero (interior cells)
  const SpaceTimeGeom st = spacetime_face_normals(pm, dm, pm.X, pm.X, 1.0);
  for (int c = 0; c < dm.ncells; ++c) {
    if (dm.isBoundary[c]) continue;
    Vec2 s{0, 0};
    for (const auto& ref : dm.cellFaces[c]) s += ref.sign * st.etaX[ref.id];
    CHECK(norm(s) < 1e-13);
  }

  // per-triangle overlap partition sum_i |T_ki| = |T_k|
  for (int t = 0; t < pm.ntri(); ++t) {
    double s = 0.0;
    for (int e = 0; e < 3; ++e) {
      const int f = pm.triFace[t][e];
      s += dm.genArea[f][(pm.face[f].tL == t) ? 0 : 1];
    }
    CHECK(s == doctest::Approx(pm.triArea[t]).epsilon(1e-13));
  }
}

TEST_CASE("update_geometry") {
  PrimalMesh pm = make_square_mesh(1.0, 1.0, 4, 4, false, false);
  DualMesh dm = build_dual(pm);
  const double area0 = dm.area[7];
  const auto grad0 = pm.gradLambda[3][1];

  // identity
  pm.set_coords(pm.X);
  dm.rebuild_geometry(pm);
  CHECK(dm.area[7] == doctest::Approx(area0).epsilon(1e-15));

  // rigid translation
  std::vector<Vec2> xs = pm.X;
  for (auto& p : xs) p += Vec2{0.3, -0.2};
  pm.set_coords(xs);
  dm.rebuild_geometry(pm);
  CHECK(dm.area[7] == doctest::Approx(area0).epsilon(1e-14));
  CHECK(pm.gradLambda[3][1].x == doctest::Approx(grad0.x).epsilon(1e-13));

  // uniform scaling by 2: areas x4, basis gradients /2
  for (auto& p : xs) p = Vec2{2.0 * p.x, 2.0 * p.y};
  pm.set_coords(xs);
  dm.rebuild_geometry(pm);
  CHECK(dm.area[7] == doctest::Approx(4.0 * area0).epsilon(1e-13));
  CHECK(pm.gradLambda[3][1].x == doctest::Approx(0.5 * grad0.x).epsilon(1e-13));

  // inverted element detection
  for (auto& p : xs) p.x = -p.x;
  CHECK_THROWS_AS(pm.set_coords(xs), MeshError);
}

TEST_CASE("space-time face normals") {
  PrimalMesh pm = make_square_mesh(2.0, 1.0, 6, 4, false, false);
  DualMesh dm = build_dual(pm);
  const double dt = 0.01;

  // static mesh: eta_t = 0, spatial part = dt |Gamma| n
  SpaceTimeGeom st = spacetime_face_normals(pm, dm, pm.X, pm.X, dt);
  for (int d = 0; d < st.nInterior; ++d) {
    CHECK(st.etaT[d] == doctest::Approx(0.0));
    const auto& df = dm.dface[d];
    const Vec2 seg = pm.corner(df.tri, df.c) - pm.bary[df.tri];
    CHECK(norm(st.etaX[d]) == doctest::Approx(dt * norm(seg)).epsilon(1e-13));
  }

  // uniform translation velocity V: eta_t = -(V.n)|Gamma| dt
  const Vec2 vel{0.37, -0.18};
  std::vector<Vec2> xn = pm.X;
  for (auto& p : xn) p += dt * vel;
  st = spacetime_face_normals(pm, dm, pm.X, xn, dt);
  for (int d = 0; d < st.nInterior; ++d) {
    const auto& df = dm.dface[d];
    const Vec2 seg = pm.corner(df.tri, df.c) - pm.bary[df.tri];
    const Vec2 nw = perp(seg);
    CHECK(st.etaT[d] == doctest::Approx(-dot(vel, nw) * dt).epsilon(1e-12));
  }

  // closure under arbitrary valid motion
  for (int trial = 0; trial < 5; ++trial) {
    const auto xr = perturb(pm, 0.02, 100 + trial);
    st = spacetime_face_normals(pm, dm, pm.X, xr, dt);
    double scale = 1.0;
    for (int c = 0; c < dm.ncells; ++c) {
      scale = std::max(scale, dm.area[c]);
      CHECK(gcl_residual(st, dm, c) < 1e-13 * scale);
    }
  }
  CHECK_THROWS_AS(spacetime_face_normals(pm, dm, pm.X, pm.X, 0.0), MeshError);
}

TEST_CASE("gcl detects corrupted geometry") {
  PrimalMesh pm = make_square_mesh(1.0, 1.0, 4, 4, false, false);
  DualMesh dm = build_dual(pm);
  SpaceTimeGeom st = spacetime_face_normals(pm, dm, pm.X, pm.X, 0.1);
  int cell = -1;
  for (int c = 0; c < dm.ncells; ++c)
    if (!dm.isBoundary[c]) {
      cell = c;
      break;
    }
  REQUIRE(cell >= 0);
  CHECK(gcl_residual(st, dm, cell) < 1e-13);
  st.etaX[dm.cellFaces[cell][0].id].x += 1.0;  // unit spike
  CHECK(gcl_residual(st, dm, cell) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("periodic wrap geometry") {
  PrimalMesh pm = make_square_mesh(1.0, 1.0, 8, 8, true, true);
  DualMesh dm = build_dual(pm);
  CHECK(pm.nv == 64);
  double total = 0.0;
  for (int c = 0; c < dm.ncells; ++c) {
    CHECK(!dm.isBoundary[c]);
    total += dm.area[c];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // GCL on a periodic moving mesh (periodic displacement field)
  std::vector<Vec2> xn = pm.X;
  const double twoPi = 2.0 * std::acos(-1.0);
  for (int v = 0; v < pm.nv; ++v) {
    xn[v].x += 0.01 * std::sin(twoPi * pm.X[v].y);
    xn[v].y += 0.01 * std::sin(twoPi * pm.X[v].x);
  }
  const SpaceTimeGeom st = spacetime_face_normals(pm, dm, pm.X, xn, 0.05);
  for (int c = 0; c < dm.ncells; ++c) CHECK(gcl_residual(st, dm, c) < 1e-14);
}

TEST_CASE("mesh file round trip") {
  PrimalMesh pm = make_square_mesh(1.0, 2.0, 3, 4, false, false);
  const std::string path = "roundtrip_mesh.txt";
  write_mesh(pm, path);
  PrimalMesh back = read_mesh(path);
  CHECK(back.nv == pm.nv);
  CHECK(back.ntri() == pm.ntri());
  CHECK(back.domainArea == doctest::Approx(pm.domainArea).epsilon(1e-12));
  DualMesh dm = build_dual(back);
  double total = 0.0;
  for (int c = 0; c < dm.ncells; ++c) total += dm.area[c];
  CHECK(total == doctest::Approx(2.0).epsilon(1e-12));
  std::remove(path.c_str());
}

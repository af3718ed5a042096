#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gpr/harness.hpp"

using namespace gpr;

namespace {

Config cfg_for(const std::string& name) {
  Config cfg;
  cfg.set("case", name);
  return cfg;
}

}  // namespace

TEST_CASE("case catalog initial data") {
  {
    Config cfg = cfg_for("rp1");
    CaseConfig cc = init_case(cfg);
    const Primitive l = cc.ic(Vec2{-0.1, 0.0});
    const Primitive r = cc.ic(Vec2{0.1, 0.0});
    CHECK(l.rho == doctest::Approx(1.0));
    CHECK(r.rho == doctest::Approx(0.125));
    CHECK(l.p == doctest::Approx(1.0));
    CHECK(r.p == doctest::Approx(0.1));
    CHECK(cc.endTime == doctest::Approx(0.2));
    // A = I and J = 0 unless a case overrides
    CHECK(l.A(0, 0) == 1.0);
    CHECK(l.A(0, 1) == 0.0);
    CHECK(l.J[0] == 0.0);
  }
  {
    CaseConfig cc = init_case(cfg_for("rp8"));
    CHECK(cc.par.cs == doctest::Approx(1.0));
    CHECK(cc.par.ch == doctest::Approx(0.0));
    CHECK(cc.par.cv == doctest::Approx(1.0));
    CHECK(cc.par.cp == doctest::Approx(1.4));
    CHECK(cc.par.tau1 > 1e19);
    const Primitive l = cc.ic(Vec2{-0.1, 0.0});
    const Primitive r = cc.ic(Vec2{0.1, 0.0});
    CHECK(l.u[1] == doctest::Approx(-0.2));
    CHECK(r.u[1] == doctest::Approx(0.2));
    CHECK(l.p == doctest::Approx(1.0));
    CHECK(r.p == doctest::Approx(0.5));
  }
  {
    CaseConfig cc = init_case(cfg_for("rotor"));
    const Primitive in = cc.ic(Vec2{0.1, 0.0});
    CHECK(in.rho == doctest::Approx(1.0));
    CHECK(in.p == doctest::Approx(1.0));
    CHECK(in.u[1] == doctest::Approx(0.5));
    const Primitive out = cc.ic(Vec2{0.5, 0.5});
    CHECK(out.u[0] == doctest::Approx(0.0));
    CHECK(cc.par.tau1 == doctest::Approx(6e20));
    CHECK(cc.par.tau2 == doctest::Approx(1e20));
  }
  CHECK_THROWS_WITH_AS(init_case(cfg_for("nonsense")),
                       doctest::Contains("unknown case"), ConfigError);
}

TEST_CASE("zero end time emits the initial state with no steps") {
  Config cfg = cfg_for("rest");
  cfg.set("end_time", "0");
  Simulation sim(init_case(cfg));
  const RunStats stats = sim.run();
  CHECK(stats.steps == 0);
  CHECK(stats.finalTime == 0.0);
}

TEST_CASE("uniform rest state is preserved over 100 steps") {
  Config cfg = cfg_for("rest");
  cfg.set("end_time", "1.0");
  cfg.set("max_dt", "0.01");
  cfg.set("mesh.nx", "8");
  cfg.set("mesh.ny", "8");
  Simulation sim(init_case(cfg));
  const State q0 = sim.fields().q[0];
  const RunStats stats = sim.run();
  CHECK(stats.steps == 100);
  double dev = 0.0;
  for (int c = 0; c < sim.dual().ncells; ++c)
    for (int s = 0; s < kNumVars; ++s)
      dev = std::max(dev, std::abs(sim.fields().q[c][s] - q0[s]));
  CHECK(dev < 1e-12);
}

TEST_CASE("error norms") {
  Config cfg = cfg_for("rest");
  cfg.set("end_time", "0");
  Simulation sim(init_case(cfg));
  // identical fields -> 0
  CHECK(sim.error_norm([](Vec2) { return 1.0; },
                       [](const State& q) { return q[kRho]; }) ==
        doctest::Approx(0.0));
  // constant offset in L1 over the unit square -> the offset
  CHECK(sim.error_norm([](Vec2) { return 1.0 + 0.25; },
                       [](const State& q) { return q[kRho]; }, "L1") ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::log2(4.0) == doctest::Approx(2.0));
}

TEST_CASE("curl monitor") {
  Config cfg = cfg_for("rest");
  cfg.set("end_time", "0");
  cfg.set("mesh.nx", "4");
  cfg.set("mesh.ny", "4");
  Simulation sim(init_case(cfg));
  // A = I everywhere -> zero curl
  auto [ca0, cj0] = sim.curl_monitor();
  CHECK(ca0 == doctest::Approx(0.0));
  CHECK(cj0 == doctest::Approx(0.0));

  // A11 = y with values planted at the dual nodes: discrete curl = -1 per element,
  // L2 aggregate = sqrt(domain area) = 1
  for (int c = 0; c < sim.dual().ncells; ++c)
    sim.fields().q[c][kA] = sim.dual().node[c].y;
  auto [ca1, cj1] = sim.curl_monitor();
  CHECK(ca1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cj1 == doctest::Approx(0.0));

  // a gradient field sampled into a column is curl-free at discretization order
  for (int c = 0; c < sim.dual().ncells; ++c) {
    const Vec2 x = sim.dual().node[c];
    // column 1 of A = grad(x^2/2 + x y) = (x + y, x)
    sim.fields().q[c][kA] = 1.0 + x.x + x.y;
    sim.fields().q[c][kA + 3] = x.x;
  }
  auto [ca2, cj2] = sim.curl_monitor();
  CHECK(ca2 < 1e-10);
}

TEST_CASE("runs are deterministic") {
  auto runOnce = [] {
    Config cfg = cfg_for("sod-box");
    cfg.set("mesh.nx", "12");
    cfg.set("end_time", "0.02");
    Simulation sim(init_case(cfg));
    sim.run();
    std::ostringstream os;
    os.precision(17);
    for (int c = 0; c < sim.dual().ncells; ++c)
      for (int s = 0; s < kNumVars; ++s) os << sim.fields().q[c][s] << ",";
    return os.str();
  };
  CHECK(runOnce() == runOnce());
}

TEST_CASE("output writers") {
  Config cfg = cfg_for("sod-box");
  cfg.set("mesh.nx", "8");
  cfg.set("end_time", "0");
  cfg.set("output.dir", "test_outputs");
  CaseConfig cc = init_case(cfg);
  cc.formats = {"csv", "vtk", "cut"};
  Simulation sim(cc);
  sim.write_outputs("t");

  std::ifstream csv("test_outputs/sod-box_t.csv");
  REQUIRE(csv.good());
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("x,y,rho,u1,u2,u3,p,T,A11", 0) == 0);
  int rows = 0;
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  CHECK(rows == sim.dual().ncells);

  std::ifstream vtk("test_outputs/sod-box_t.vtk");
  REQUIRE(vtk.good());
  bool foundCellData = false;
  while (std::getline(vtk, line))
    if (line.rfind("CELL_DATA", 0) == 0) {
      foundCellData = true;
      CHECK(line == "CELL_DATA " + std::to_string(sim.dual().ncells));
    }
  CHECK(foundCellData);

  std::ifstream cut("test_outputs/sod-box_t_cut.csv");
  REQUIRE(cut.good());
  std::remove("test_outputs/sod-box_t.csv");
  std::remove("test_outputs/sod-box_t.vtk");
  std::remove("test_outputs/sod-box_t_cut.csv");
}

TEST_CASE("eulerian degeneration of the ALE solver") {
  // all-fixed motion tags reproduce the eulerian scheme bit for bit
  auto runMode = [](const std::string& mode) {
    Config cfg = cfg_for("sod-box");
    cfg.set("mesh.nx", "10");
    cfg.set("end_time", "0.01");
    cfg.set("motion.mode", mode);
    cfg.set("motion.zeta", "5");
    cfg.set("motion.boundary", "fixed");
    CaseConfig cc = init_case(cfg);
    if (mode == "prescribed") {
      for (int tag = 0; tag < 4; ++tag)
        cc.mc.perTag[tag].kind = BoundaryMotion::Kind::fixed;
    }
    Simulation sim(cc);
    sim.run();
    std::ostringstream os;
    os.precision(17);
    for (int c = 0; c < sim.dual().ncells; ++c) os << sim.fields().q[c][kRho] << ",";
    return os.str();
  };
  // periodic box has no boundary: prescribed mode keeps every vertex still
  CHECK(runMode("eulerian") == runMode("prescribed"));
}

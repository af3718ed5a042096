#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gpr/harness.hpp"

namespace gpr {

namespace {

void write_csv(const Simulation& sim, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_outputs: cannot open " + path);
  out << "x,y,rho,u1,u2,u3,p,T";
  for (int i = 1; i <= 3; ++i)
    for (int k = 1; k <= 3; ++k) out << ",A" << i << k;
  out << ",J1,J2,J3";
  for (int i = 1; i <= 3; ++i)
    for (int k = 1; k <= 3; ++k) out << ",phi" << i << k;
  out << ",psi1,psi2,psi3,E\n";
  out.precision(12);
  const auto& par = sim.config().par;
  const auto& f = sim.fields();
  for (int c = 0; c < sim.dual().ncells; ++c) {
    const Vec2 x = sim.cell_position(c);
    const Primitive prim = conserved_to_primitive(f.q[c], par, c);
    out << x.x << "," << x.y << "," << prim.rho << "," << prim.u[0] << "," << prim.u[1] << ","
        << prim.u[2] << "," << prim.p << "," << prim.T;
    for (int i = 0; i < 9; ++i) out << "," << prim.A.m[i];
    for (int i = 0; i < 3; ++i) out << "," << prim.J[i];
    for (int i = 0; i < 9; ++i) out << "," << prim.phi.m[i];
    for (int i = 0; i < 3; ++i) out << "," << prim.psi[i];
    out << "," << f.q[c][kE] << "\n";
  }
}

// legacy ASCII VTK; each dual cell emits its own polygon corners
void write_vtk(const Simulation& sim, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_outputs: cannot open " + path);
  const auto& pm = sim.primal();
  const auto& dm = sim.dual();
  const auto& par = sim.config().par;

  std::vector<Vec2> pts;
  std::vector<std::vector<int>> polys(dm.ncells);
  for (int c = 0; c < dm.ncells; ++c) {
    const auto& fc = pm.face[c];
    const Vec2 c0 = pm.corner(fc.tL, fc.eL);
    const Vec2 c1 = pm.corner(fc.tL, (fc.eL + 1) % 3);
    const Vec2 bL = pm.bary[fc.tL];
    auto push = [&](Vec2 p) {
      polys[c].push_back(static_cast<int>(pts.size()));
      pts.push_back(p);
    };
    if (fc.tR >= 0) {
      const Vec2 c0R = pm.corner(fc.tR, (fc.eR + 1) % 3);
      const Vec2 bR = pm.bary[fc.tR] + (c0 - c0R);
      push(c0);
      push(bR);
      push(c1);
      push(bL);
    } else {
      push(c0);
      push(c1);
      push(bL);
    }
  }
  out << "# vtk DataFile Version 3.0\ndual-cell fields\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << pts.size() << " double\n";
  out.precision(12);
  for (const auto& p : pts) out << p.x << " " << p.y << " 0\n";
  size_t listLen = 0;
  for (const auto& poly : polys) listLen += poly.size() + 1;
  out << "CELLS " << polys.size() << " " << listLen << "\n";
  for (const auto& poly : polys) {
    out << poly.size();
    for (int id : poly) out << " " << id;
    out << "\n";
  }
  out << "CELL_TYPES " << polys.size() << "\n";
  for (const auto& poly : polys) out << ((poly.size() == 4) ? 9 : 5) << "\n";

  out << "CELL_DATA " << polys.size() << "\n";
  auto scalar = [&](const std::string& nm, const std::function<double(int)>& get) {
    out << "SCALARS " << nm << " double 1\nLOOKUP_TABLE default\n";
    for (int c = 0; c < dm.ncells; ++c) out << get(c) << "\n";
  };
  const auto& f = sim.fields();
  scalar("rho", [&](int c) { return f.q[c][kRho]; });
  scalar("p", [&](int c) { return conserved_to_primitive(f.q[c], par, c).p; });
  scalar("E", [&](int c) { return f.q[c][kE]; });
  scalar("A11", [&](int c) { return f.q[c][kA]; });
  scalar("A12", [&](int c) { return f.q[c][kA + 1]; });
  scalar("J1", [&](int c) { return f.q[c][kJ]; });
  out << "VECTORS u double\n";
  for (int c = 0; c < dm.ncells; ++c) {
    const double ir = 1.0 / f.q[c][kRho];
    out << f.q[c][kMom + 0] * ir << " " << f.q[c][kMom + 1] * ir << " 0\n";
  }
}

// 1D cut: cells whose centroid lies within half a cell height of y = cutY, sorted by x
void write_cut(const Simulation& sim, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_outputs: cannot open " + path);
  const auto& dm = sim.dual();
  const auto& par = sim.config().par;
  const double band = 0.51 * std::sqrt(dm.area[0]);
  std::vector<std::pair<double, int>> sel;
  for (int c = 0; c < dm.ncells; ++c) {
    const Vec2 x = sim.cell_position(c);
    if (std::abs(x.y - sim.config().cutY) <= band) sel.emplace_back(x.x, c);
  }
  std::sort(sel.begin(), sel.end());
  out << "x,rho,u1,u2,p,T,A11,A12,A21,A22,J1,E\n";
  out.precision(12);
  const auto& f = sim.fields();
  for (const auto& [x, c] : sel) {
    const Primitive prim = conserved_to_primitive(f.q[c], par, c);
    out << x << "," << prim.rho << "," << prim.u[0] << "," << prim.u[1] << "," << prim.p << ","
        << prim.T << "," << prim.A(0, 0) << "," << prim.A(0, 1) << "," << prim.A(1, 0) << ","
        << prim.A(1, 1) << "," << prim.J[0] << "," << f.q[c][kE] << "\n";
  }
}

}  // namespace

void Simulation::write_outputs(const std::string& suffix) const {
  namespace fs = std::filesystem;
  fs::create_directories(cc_.outputDir);
  for (const auto& fmt : cc_.formats) {
    const std::string base = cc_.outputDir + "/" + cc_.name + "_" + suffix;
    if (fmt == "csv")
      write_csv(*this, base + ".csv");
    else if (fmt == "vtk")
      write_vtk(*this, base + ".vtk");
    else if (fmt == "cut")
      write_cut(*this, base + "_cut.csv");
    else
      throw ConfigError("unknown output format '" + fmt + "' (csv|vtk|cut)");
  }
}

}  // namespace gpr

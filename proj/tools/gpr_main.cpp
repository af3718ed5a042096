#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "gpr/harness.hpp"
#include "gpr/oracles.hpp"

namespace {

int run_command(const std::string& configFile, const gpr::Config& overrides) {
  gpr::Config cfg;
  if (!configFile.empty()) cfg = gpr::Config::from_file(configFile);
  cfg.merge(overrides);
  gpr::CaseConfig cc = gpr::init_case(cfg);
  if (cc.formats.empty()) cc.formats = {"csv"};
  gpr::Simulation sim(std::move(cc));
  const gpr::RunStats stats = sim.run();
  std::printf("case %s: %d steps to t = %.6g in %.2f s\n", sim.config().name.c_str(),
              stats.steps, stats.finalTime, stats.wallSeconds);
  std::printf("  mass %.12e -> %.12e\n", stats.massTotal.front(), stats.massTotal.back());
  std::printf("  energy %.12e -> %.12e\n", stats.energyTotal.front(),
              stats.energyTotal.back());
  if (!stats.curlA.empty())
    std::printf("  curl ||A|| %.6e ||J|| %.6e at final time\n", stats.curlA.back(),
                stats.curlJ.back());
  return 0;
}

int oracle_command(const std::string& caseName, const std::string& system, int n, double time,
                   const std::string& outPath) {
  using namespace gpr::oracle;
  Case1d c;
  c.time = time;
  if (caseName.rfind("rp", 0) == 0) {
    gpr::Config cfg;
    cfg.set("case", caseName);
    const gpr::CaseConfig cc = gpr::init_case(cfg);
    const gpr::Primitive l = cc.ic(gpr::Vec2{-0.4, 0.0});
    const gpr::Primitive r = cc.ic(gpr::Vec2{0.4, 0.0});
    c.rhoL = l.rho;
    c.rhoR = r.rho;
    c.u1L = l.u[0];
    c.u1R = r.u[0];
    c.u2L = l.u[1];
    c.u2R = r.u[1];
    c.pL = l.p;
    c.pR = r.p;
    c.par = cc.par;
    // the table's discontinuity location
    c.xd = (caseName == "rp4") ? -0.2 : (caseName == "rp5" ? 0.3 : 0.0);
    if (time <= 0.0) c.time = cc.endTime;
  } else if (caseName == "explosion-fluid") {
    c.rhoL = 1.0;
    c.rhoR = 0.125;
    c.pL = 1.0;
    c.pR = 0.1;
    c.xd = 0.5;
    c.x0 = 0.0;
    c.x1 = 1.0;
    c.par.set_gamma_cv(1.4, 2.5);
    if (time <= 0.0) c.time = 0.25;
  } else {
    std::fprintf(stderr, "oracle: unknown case %s (rp1..rp9, explosion-fluid)\n",
                 caseName.c_str());
    return 2;
  }
  System1d sys = System1d::euler;
  if (system == "euler-radial")
    sys = System1d::euler_radial;
  else if (system == "gpr")
    sys = System1d::gpr;
  else if (system != "euler") {
    std::fprintf(stderr, "oracle: system must be euler|euler-radial|gpr\n");
    return 2;
  }
  const Profile1d prof = reference_1d(c, sys, n);
  std::ofstream out(outPath);
  if (!out) {
    std::fprintf(stderr, "oracle: cannot open %s\n", outPath.c_str());
    return 1;
  }
  out.precision(12);
  const bool gprSys = (sys == System1d::gpr);
  out << (gprSys ? "x,rho,u1,u2,p,A11,A12,A21,A22,J1,T\n" : "x,rho,u1,p\n");
  for (size_t i = 0; i < prof.x.size(); ++i) {
    out << prof.x[i] << "," << prof.rho[i] << "," << prof.u1[i];
    if (gprSys)
      out << "," << prof.u2[i] << "," << prof.p[i] << "," << prof.A11[i] << "," << prof.A12[i]
          << "," << prof.A21[i] << "," << prof.A22[i] << "," << prof.J1[i] << "," << prof.T[i];
    else
      out << "," << prof.p[i];
    out << "\n";
  }
  std::printf("oracle %s/%s n=%d t=%g -> %s\n", caseName.c_str(), system.c_str(), n, c.time,
              outPath.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-implicit ALE hybrid FV/FE solver for the GLM-GPR continuum model"};
  app.require_subcommand(1);

  std::string configFile, caseName, meshLevel, outputDir;
  std::vector<std::string> defines;

  auto* run = app.add_subcommand("run", "run a benchmark case");
  run->add_option("--config", configFile, "key=value config file");
  run->add_option("--case", caseName, "case name (overrides config)");
  std::string cfl, order, endTime;
  bool ale = false, eulerian = false;
  run->add_option("--mesh-level", meshLevel, "mesh ladder level (tgv/ivortex)");
  run->add_option("--cfl", cfl, "CFL number");
  run->add_option("--order", order, "1 or 2");
  run->add_option("--end-time", endTime, "final time");
  run->add_option("--output-dir", outputDir, "output directory");
  run->add_flag("--ale", ale, "lagrangian-smoothed mesh motion");
  run->add_flag("--eulerian", eulerian, "static mesh");
  run->add_option("-D,--define", defines, "extra key=value overrides");

  auto* oracle = app.add_subcommand("oracle", "emit a 1D reference profile as CSV");
  std::string oCase = "rp1", oSystem = "euler", oOut = "oracle.csv";
  int oN = 10000;
  double oTime = -1.0;
  oracle->add_option("--case", oCase, "rp1..rp9 or explosion-fluid");
  oracle->add_option("--system", oSystem, "euler|euler-radial|gpr");
  oracle->add_option("--n", oN, "number of cells");
  oracle->add_option("--time", oTime, "final time (default: the case's)");
  oracle->add_option("--out", oOut, "output CSV path");

  auto* conv = app.add_subcommand("convergence", "run a mesh ladder and print orders");
  std::string cCase = "tgv";
  int cFrom = 1, cTo = 4;
  conv->add_option("--case", cCase, "tgv or ivortex");
  conv->add_option("--from", cFrom, "first mesh level");
  conv->add_option("--to", cTo, "last mesh level");
  conv->add_option("-D,--define", defines, "extra key=value overrides");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      gpr::Config overrides;
      for (const auto& d : defines) {
        const auto eq = d.find('=');
        if (eq == std::string::npos) throw gpr::ConfigError("-D expects key=value");
        overrides.set(d.substr(0, eq), d.substr(eq + 1));
      }
      if (!caseName.empty()) overrides.set("case", caseName);
      if (!meshLevel.empty()) overrides.set("mesh.level", meshLevel);
      if (!cfl.empty()) overrides.set("cfl", cfl);
      if (!order.empty()) overrides.set("order", order);
      if (!endTime.empty()) overrides.set("end_time", endTime);
      if (!outputDir.empty()) overrides.set("output.dir", outputDir);
      if (ale) overrides.set("motion.mode", "lagrangian-smoothed");
      if (eulerian) overrides.set("motion.mode", "eulerian");
      return run_command(configFile, overrides);
    }
    if (oracle->parsed()) return oracle_command(oCase, oSystem, oN, oTime, oOut);
    if (conv->parsed()) {
      gpr::Config cfg;
      cfg.set("case", cCase);
      for (const auto& d : defines) {
        const auto eq = d.find('=');
        if (eq == std::string::npos) throw gpr::ConfigError("-D expects key=value");
        cfg.set(d.substr(0, eq), d.substr(eq + 1));
      }
      std::vector<int> levels;
      for (int l = cFrom; l <= cTo; ++l) levels.push_back(l);
      const auto rows = gpr::convergence_table(cfg, levels);
      std::printf("%s", gpr::format_convergence(rows).c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

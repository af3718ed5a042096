#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gpr/harness.hpp"
#include "gpr/oracles.hpp"

namespace py = pybind11;
using namespace gpr;

namespace {

py::dict run_case(const std::string& name, const py::dict& overrides) {
  Config cfg;
  cfg.set("case", name);
  for (const auto& item : overrides)
    cfg.set(py::cast<std::string>(item.first), py::cast<std::string>(py::str(item.second)));
  Simulation sim(init_case(cfg));
  const RunStats stats = sim.run();

  py::dict out;
  out["steps"] = stats.steps;
  out["final_time"] = stats.finalTime;
  out["wall_seconds"] = stats.wallSeconds;
  out["mass_initial"] = stats.massTotal.front();
  out["mass_final"] = stats.massTotal.back();
  out["energy_initial"] = stats.energyTotal.front();
  out["energy_final"] = stats.energyTotal.back();
  const int nc = sim.dual().ncells;
  std::vector<double> x(nc), y(nc), rho(nc), u1(nc), u2(nc), p(nc), e(nc);
  const auto& par = sim.config().par;
  for (int c = 0; c < nc; ++c) {
    const Vec2 pos = sim.cell_position(c);
    const Primitive prim = conserved_to_primitive(sim.fields().q[c], par, c);
    x[c] = pos.x;
    y[c] = pos.y;
    rho[c] = prim.rho;
    u1[c] = prim.u[0];
    u2[c] = prim.u[1];
    p[c] = prim.p;
    e[c] = sim.fields().q[c][kE];
  }
  out["x"] = x;
  out["y"] = y;
  out["rho"] = rho;
  out["u1"] = u1;
  out["u2"] = u2;
  out["p"] = p;
  out["E"] = e;
  const auto [curlA, curlJ] = sim.curl_monitor();
  out["curl_A"] = curlA;
  out["curl_J"] = curlJ;
  return out;
}

py::dict oracle_profile(const std::string& system, double rhoL, double uL, double utL,
                        double pL, double rhoR, double uR, double utR, double pR, double xd,
                        double t, int n, double gamma, double cs, double ch) {
  oracle::Case1d c;
  c.rhoL = rhoL;
  c.rhoR = rhoR;
  c.u1L = uL;
  c.u1R = uR;
  c.u2L = utL;
  c.u2R = utR;
  c.pL = pL;
  c.pR = pR;
  c.xd = xd;
  c.time = t;
  c.par.set_gamma_cv(gamma, 1.0);
  c.par.cs = cs;
  c.par.ch = ch;
  c.par.T0 = temperature(1.0, 1.0, c.par);
  c.par.tau1 = c.par.tau2 = 1e30;
  oracle::System1d sys = oracle::System1d::euler;
  if (system == "euler-radial") sys = oracle::System1d::euler_radial;
  if (system == "gpr") sys = oracle::System1d::gpr;
  const auto prof = oracle::reference_1d(c, sys, n);
  py::dict out;
  out["x"] = prof.x;
  out["rho"] = prof.rho;
  out["u1"] = prof.u1;
  out["p"] = prof.p;
  if (sys == oracle::System1d::gpr) {
    out["u2"] = prof.u2;
    out["A11"] = prof.A11;
    out["J1"] = prof.J1;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "semi-implicit ALE hybrid FV/FE solver for the GLM-GPR continuum model";

  py::class_<MaterialParams>(m, "MaterialParams")
      .def(py::init<>())
      .def_readwrite("gamma", &MaterialParams::gamma)
      .def_readwrite("cv", &MaterialParams::cv)
      .def_readwrite("cp", &MaterialParams::cp)
      .def_readwrite("cs", &MaterialParams::cs)
      .def_readwrite("ch", &MaterialParams::ch)
      .def_readwrite("tau1", &MaterialParams::tau1)
      .def_readwrite("tau2", &MaterialParams::tau2)
      .def_readwrite("rho0", &MaterialParams::rho0)
      .def_readwrite("p0", &MaterialParams::p0)
      .def_readwrite("c0", &MaterialParams::c0)
      .def_readwrite("cA", &MaterialParams::cA)
      .def_readwrite("cJ", &MaterialParams::cJ)
      .def_readwrite("T0", &MaterialParams::T0)
      .def("set_gamma_cv", &MaterialParams::set_gamma_cv);

  m.def("eos_internal_energy", &eos_internal_energy, py::arg("rho"), py::arg("p"),
        py::arg("params"));
  m.def("enthalpy", &enthalpy, py::arg("rho"), py::arg("p"), py::arg("params"));
  m.def("temperature", &temperature, py::arg("rho"), py::arg("p"), py::arg("params"));
  m.def("sound_speed", &eos_sound_speed, py::arg("rho"), py::arg("p"), py::arg("params"));

  m.def(
      "euler_star",
      [](double rhoL, double uL, double pL, double rhoR, double uR, double pR, double gamma) {
        const auto s = oracle::euler_star({rhoL, uL, 0.0, pL}, {rhoR, uR, 0.0, pR}, gamma);
        return py::make_tuple(s.p, s.u);
      },
      py::arg("rhoL"), py::arg("uL"), py::arg("pL"), py::arg("rhoR"), py::arg("uR"),
      py::arg("pR"), py::arg("gamma") = 1.4,
      "star-region (p*, u*) of the exact Euler Riemann solution");

  m.def(
      "euler_exact",
      [](double rhoL, double uL, double pL, double rhoR, double uR, double pR, double gamma,
         double xi) {
        const auto s = oracle::euler_exact({rhoL, uL, 0.0, pL}, {rhoR, uR, 0.0, pR}, gamma, xi);
        py::dict d;
        d["rho"] = s.rho;
        d["u"] = s.un;
        d["p"] = s.p;
        return d;
      },
      py::arg("rhoL"), py::arg("uL"), py::arg("pL"), py::arg("rhoR"), py::arg("uR"),
      py::arg("pR"), py::arg("gamma") = 1.4, py::arg("xi") = 0.0);

  m.def("stokes_first", &oracle::stokes_first, py::arg("x"), py::arg("t"), py::arg("mu"));

  m.def("oracle_profile", &oracle_profile, py::arg("system"), py::arg("rhoL"), py::arg("uL"),
        py::arg("utL"), py::arg("pL"), py::arg("rhoR"), py::arg("uR"), py::arg("utR"),
        py::arg("pR"), py::arg("xd") = 0.0, py::arg("t") = 0.2, py::arg("n") = 2000,
        py::arg("gamma") = 1.4, py::arg("cs") = 0.0, py::arg("ch") = 0.0);

  m.def("run_case", &run_case, py::arg("name"), py::arg("overrides") = py::dict(),
        "run a catalog case and return final fields plus run statistics");
  m.def("case_names", &case_names);
}

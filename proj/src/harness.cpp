#include "gpr/harness.hpp"

#include <chrono>
#include <cmath>

namespace gpr {

Simulation::Simulation(CaseConfig cc) : cc_(std::move(cc)) {
  pm_ = cc_.meshFile.empty()
            ? make_square_mesh(cc_.lx, cc_.ly, cc_.nx, cc_.ny, cc_.periodicX, cc_.periodicY,
                               cc_.origin, cc_.pattern)
            : read_mesh(cc_.meshFile);
  dm_ = build_dual(pm_);

  f_.q.resize(dm_.ncells);
  for (int c = 0; c < dm_.ncells; ++c)
    f_.q[c] = primitive_to_conserved(cc_.ic(cell_position(c)), cc_.par);
  pVert_.resize(pm_.nv);
  for (int v = 0; v < pm_.nv; ++v) pVert_[v] = cc_.ic(pm_.X[v]).p;
  refresh_plag();
}

void Simulation::refresh_plag() {
  f_.plag.resize(dm_.ncells);
  for (int c = 0; c < dm_.ncells; ++c)
    f_.plag[c] = 0.5 * (pVert_[pm_.face[c].v0] + pVert_[pm_.face[c].v1]);
}

Vec2 Simulation::cell_position(int c) const {
  Vec2 p = dm_.centroidInGen[c][0];
  if (cc_.meshFile.empty()) {
    if (pm_.periodicX) {
      const double w = cc_.lx;
      p.x = cc_.origin.x + std::fmod(std::fmod(p.x - cc_.origin.x, w) + w, w);
    }
    if (pm_.periodicY) {
      const double w = cc_.ly;
      p.y = cc_.origin.y + std::fmod(std::fmod(p.y - cc_.origin.y, w) + w, w);
    }
  }
  return p;
}

void Simulation::step() {
  double dt = compute_dt(f_, dm_, cc_.par, cc_.tc);
  // land on the end time with two balanced steps rather than a tiny remainder
  const double rem = cc_.endTime - t_;
  if (rem < 2.0 * dt) dt = (rem > dt) ? 0.5 * rem : rem;
  if (dt <= 0.0) return;

  // stage 0: mesh motion
  std::vector<Vec2> xOld = pm_.X;
  std::vector<Vec2> xNew = xOld;
  if (cc_.mc.mode != MotionMode::eulerian) {
    MeshVelocity vel;
    if (cc_.mc.mode == MotionMode::prescribed) {
      vel = velocity_prescribed(pm_, cc_.mc, t_);
    } else {
      std::vector<Vec2> cellVel(dm_.ncells);
      for (int c = 0; c < dm_.ncells; ++c) {
        const double ir = 1.0 / f_.q[c][kRho];
        cellVel[c] = Vec2{f_.q[c][kMom + 0] * ir, f_.q[c][kMom + 1] * ir};
      }
      vel = velocity_smoothed(pm_, dm_, cellVel, cc_.mc, t_, dt);
    }
    xNew = advance_mesh(pm_, vel, dt);
  }

  const SpaceTimeGeom st = spacetime_face_normals(pm_, dm_, xOld, xNew, dt);

  // stage 1: transport on the space-time volumes (geometry held at t^n)
  transport_step(f_, pm_, dm_, st, cc_.par, cc_.tc, cc_.bcs, dt);

  if (cc_.mc.mode != MotionMode::eulerian) {
    // the vertex pressure represents the spatial field p^n: moving a vertex must
    // not silently advect the field, so shift the values along the displacement
    std::vector<Vec2> gradP(pm_.ntri(), Vec2{});
    for (int t = 0; t < pm_.ntri(); ++t)
      for (int a = 0; a < 3; ++a) gradP[t] += pVert_[pm_.tri[t][a]] * pm_.gradLambda[t][a];
    for (int v = 0; v < pm_.nv; ++v) {
      Vec2 g{0.0, 0.0};
      double w = 0.0;
      for (int t : pm_.vertTris[v]) {
        g += pm_.triArea[t] * gradP[t];
        w += pm_.triArea[t];
      }
      if (w > 0.0) pVert_[v] += dot((xNew[v] - xOld[v]), g * (1.0 / w));
    }
    pm_.set_coords(xNew);
    dm_.rebuild_geometry(pm_);
  }

  // stages 2-3: grid transfer happens inside the pressure stage; relaxation first
  stats_.newtonIterationsMax =
      std::max(stats_.newtonIterationsMax, relax_all(f_.qStar, cc_.par, cc_.rc, dt));

  // stage 4: Picard pressure stage
  std::vector<double> hVert, hDual;
  const PressureStageStats ps = picard_pressure_stage(f_.qStar, pVert_, pm_, dm_, cc_.par,
                                                      cc_.bcs, cc_.pc, dt, hVert, hDual);
  stats_.cgIterations += ps.cgIterationsTotal;

  // stage 5: energy correction
  energy_correction(f_.qStar, hDual, pm_, dm_, cc_.par, cc_.bcs, dt);

  f_.q.swap(f_.qStar);
  refresh_plag();
  t_ += dt;
  ++stats_.steps;
  stats_.dts.push_back(dt);
}

double Simulation::mass_total() const {
  double s = 0.0;
  for (int c = 0; c < dm_.ncells; ++c) s += dm_.area[c] * f_.q[c][kRho];
  return s;
}

double Simulation::energy_total() const {
  double s = 0.0;
  for (int c = 0; c < dm_.ncells; ++c) s += dm_.area[c] * f_.q[c][kE];
  return s;
}

std::pair<double, double> Simulation::curl_monitor() const {
  std::vector<State> gx, gy;
  spatial_gradients(f_.q, pm_, dm_, gx, gy);
  double sa = 0.0, sj = 0.0;
  for (int t = 0; t < pm_.ntri(); ++t) {
    double ca = 0.0;
    for (int k = 0; k < 3; ++k) {
      // curl of column k of A with d/dz = 0
      const double c1 = gy[t][kA + 3 * 2 + k];
      const double c2 = -gx[t][kA + 3 * 2 + k];
      const double c3 = gx[t][kA + 3 * 1 + k] - gy[t][kA + 3 * 0 + k];
      ca += c1 * c1 + c2 * c2 + c3 * c3;
    }
    const double j1 = gy[t][kJ + 2];
    const double j2 = -gx[t][kJ + 2];
    const double j3 = gx[t][kJ + 1] - gy[t][kJ + 0];
    sa += pm_.triArea[t] * ca;
    sj += pm_.triArea[t] * (j1 * j1 + j2 * j2 + j3 * j3);
  }
  return {std::sqrt(sa), std::sqrt(sj)};
}

void Simulation::record_curl() {
  const auto [ca, cj] = curl_monitor();
  stats_.curlTimes.push_back(t_);
  stats_.curlA.push_back(ca);
  stats_.curlJ.push_back(cj);
}

RunStats Simulation::run() {
  const auto t0 = std::chrono::steady_clock::now();
  double nextOutput = (cc_.outputEvery > 0.0) ? cc_.outputEvery : cc_.endTime + 1.0;
  int frame = 0;
  if (!cc_.formats.empty()) write_outputs("0000");
  if (cc_.curlEvery > 0) record_curl();
  stats_.massTotal.push_back(mass_total());
  stats_.energyTotal.push_back(energy_total());

  while (t_ < cc_.endTime - 1e-14 * std::max(1.0, cc_.endTime)) {
    step();
    if (cc_.curlEvery > 0 && stats_.steps % cc_.curlEvery == 0) record_curl();
    stats_.massTotal.push_back(mass_total());
    stats_.energyTotal.push_back(energy_total());
    if (t_ >= nextOutput - 1e-14) {
      ++frame;
      if (!cc_.formats.empty()) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d", frame);
        write_outputs(buf);
      }
      nextOutput += cc_.outputEvery;
    }
  }
  if (cc_.curlEvery > 0 &&
      (stats_.curlTimes.empty() || stats_.curlTimes.back() < t_))
    record_curl();
  if (!cc_.formats.empty()) write_outputs("final");
  stats_.finalTime = t_;
  stats_.wallSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return stats_;
}

double Simulation::error_norm(const std::function<double(Vec2)>& ref,
                              const std::function<double(const State&)>& field,
                              const std::string& norm) const {
  double acc = 0.0;
  for (int c = 0; c < dm_.ncells; ++c) {
    const double e = field(f_.q[c]) - ref(cell_position(c));
    if (norm == "Linf")
      acc = std::max(acc, std::abs(e));
    else if (norm == "L1")
      acc += dm_.area[c] * std::abs(e);
    else
      acc += dm_.area[c] * e * e;
  }
  return (norm == "L2") ? std::sqrt(acc) : acc;
}

std::vector<ConvergenceRow> convergence_table(const Config& base,
                                              const std::vector<int>& levels) {
  std::vector<ConvergenceRow> rows;
  for (const int lev : levels) {
    Config cfg = base;
    cfg.set("mesh.level", std::to_string(lev));
    CaseConfig cc = init_case(cfg);
    if (!cc.exact) throw ConfigError("convergence_table: case has no exact solution");
    Simulation sim(cc);
    sim.run();
    const MaterialParams par = cc.par;
    const auto exact = cc.exact;
    ConvergenceRow row;
    row.level = lev;
    // errors on the primal-element representation (the intermediate-stage fields);
    // the momentum norm is per-component (the fields are symmetric across x/y)
    const auto& dm = sim.dual();
    const auto& pm = sim.primal();
    std::vector<double> rhoD(dm.ncells), mxD(dm.ncells), myD(dm.ncells), eD(dm.ncells),
        pD(dm.ncells);
    for (int c = 0; c < dm.ncells; ++c) {
      rhoD[c] = sim.fields().q[c][kRho];
      mxD[c] = sim.fields().q[c][kMom + 0];
      myD[c] = sim.fields().q[c][kMom + 1];
      eD[c] = sim.fields().q[c][kE];
      pD[c] = sim.fields().plag[c];
    }
    const auto rhoE = dual_to_primal(rhoD, pm, dm);
    const auto mxE = dual_to_primal(mxD, pm, dm);
    const auto myE = dual_to_primal(myD, pm, dm);
    const auto eE = dual_to_primal(eD, pm, dm);
    (void)pD;
    double aRho = 0, aM = 0, aE = 0, aP = 0;
    for (int t = 0; t < pm.ntri(); ++t) {
      const Primitive ex = exact(pm.bary[t]);
      const double w = pm.triArea[t];
      const double dr = rhoE[t] - ex.rho;
      const double dx = mxE[t] - ex.rho * ex.u[0];
      const double dy = myE[t] - ex.rho * ex.u[1];
      const double de = eE[t] - energy_decompose(ex, par).total();
      aRho += w * dr * dr;
      aM += w * 0.5 * (dx * dx + dy * dy);
      aE += w * de * de;
      // the pressure is the P1 vertex unknown: edge-midpoint quadrature
      for (int e = 0; e < 3; ++e) {
        const Vec2 xm = (pm.corner(t, e) + pm.corner(t, (e + 1) % 3)) * 0.5;
        const double ph = 0.5 * (sim.vertexPressure()[pm.tri[t][e]] +
                                 sim.vertexPressure()[pm.tri[t][(e + 1) % 3]]);
        const double dp = ph - exact(xm).p;
        aP += w / 3.0 * dp * dp;
      }
    }
    row.eRho = std::sqrt(aRho);
    row.eM = std::sqrt(aM);
    row.eE = std::sqrt(aE);
    row.eP = std::sqrt(aP);
    if (!rows.empty()) {
      const auto& prev = rows.back();
      const double l2 = std::log(2.0);
      row.oRho = std::log(prev.eRho / row.eRho) / l2;
      row.oM = std::log(prev.eM / row.eM) / l2;
      row.oE = std::log(prev.eE / row.eE) / l2;
      row.oP = std::log(prev.eP / row.eP) / l2;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_convergence(const std::vector<ConvergenceRow>& rows) {
  char buf[256];
  std::string out =
      "mesh   L2(rho)      O(rho)  L2(rho u)    O(rho u)  L2(E)        O(E)   L2(p)        "
      "O(p)\n";
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "M%-4d %-12.3e %-7.2f %-12.3e %-9.2f %-12.3e %-6.2f %-12.3e %-6.2f\n",
                  r.level, r.eRho, r.oRho, r.eM, r.oM, r.eE, r.oE, r.eP, r.oP);
    out += buf;
  }
  return out;
}

}  // namespace gpr

// Acceptance suite: one criterion per --criterion N, each printing PASS or FAIL.
// Thresholds marked "frozen" were calibrated once on the first build and committed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gpr/harness.hpp"
#include "gpr/oracles.hpp"
#include "gpr/relaxation.hpp"

using namespace gpr;

namespace {

// ---- frozen thresholds (calibrated at first build) ----
const std::map<std::string, double> kRpL1Frozen = {
    {"rp1", 1.0e-2}, {"rp2", 1.5e-2}, {"rp3", 1.2e-2}, {"rp4", 2.5e-1},
    {"rp5", 2.5e-1}, {"rp6", 1.5e-2}, {"rp7", 1.2e-2},
};
const double kRp8L1Frozen = 1.5e-2;   // L1(rho) vs 1D GPR oracle
const double kRp9L1Frozen = 1.5e-2;
const double kExplosionL1Frozen = 1.5e-2;  // L1(rho) on the radial cut
const double kStokesLinf = 5e-3;           // spec-pinned

int gFails = 0;

void report(int crit, const std::string& what, bool pass, const std::string& detail) {
  std::printf("criterion %2d %-34s %s  %s\n", crit, what.c_str(), pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++gFails;
}

Config base_config(const std::string& name) {
  Config cfg;
  cfg.set("case", name);
  return cfg;
}

struct LadderResult {
  std::vector<ConvergenceRow> rows;
};

LadderResult run_ladder(const std::string& name, double p0, int from, int to) {
  Config cfg = base_config(name);
  if (p0 > 0) cfg.set("p0", std::to_string(p0));
  std::vector<int> levels;
  for (int l = from; l <= to; ++l) levels.push_back(l);
  LadderResult lr;
  lr.rows = convergence_table(cfg, levels);
  std::printf("%s", format_convergence(lr.rows).c_str());
  return lr;
}

// 1D cut profile along y ~ cutY from a finished simulation
struct Cut {
  std::vector<double> x;
  std::vector<Primitive> prim;
  double dx = 0.0;
};

Cut cut_profile(const Simulation& sim, double cutY = 0.0) {
  Cut cut;
  const auto& dm = sim.dual();
  const double band = 0.51 * std::sqrt(dm.area[0]);
  std::vector<std::pair<double, int>> sel;
  for (int c = 0; c < dm.ncells; ++c) {
    const Vec2 x = sim.cell_position(c);
    if (std::abs(x.y - cutY) <= band) sel.emplace_back(x.x, c);
  }
  std::sort(sel.begin(), sel.end());
  for (const auto& [x, c] : sel) {
    cut.x.push_back(x);
    cut.prim.push_back(conserved_to_primitive(sim.fields().q[c], sim.config().par, c));
  }
  if (cut.x.size() > 1) cut.dx = (cut.x.back() - cut.x.front()) / (cut.x.size() - 1.0);
  return cut;
}

// steepest-gradient wave locator inside a window
double locate_jump(const Cut& cut, const std::function<double(const Primitive&)>& field,
                   double xlo, double xhi) {
  double best = 0.0, bestPos = 0.5 * (xlo + xhi);
  for (size_t i = 1; i < cut.x.size(); ++i) {
    const double xm = 0.5 * (cut.x[i] + cut.x[i - 1]);
    if (xm < xlo || xm > xhi) continue;
    const double d = std::abs(field(cut.prim[i]) - field(cut.prim[i - 1]));
    if (d > best) {
      best = d;
      bestPos = xm;
    }
  }
  return bestPos;
}

struct RpResult {
  double l1 = 0.0;
  Cut cut;
  Simulation* sim = nullptr;
};

double run_rp_l1(const std::string& name, Cut& cutOut, double& dxOut) {
  Config cfg = base_config(name);
  CaseConfig cc = init_case(cfg);
  const double xd = (name == "rp4") ? -0.2 : (name == "rp5" ? 0.3 : 0.0);
  const double te = cc.endTime;
  const Primitive l = cc.ic(Vec2{-0.45, 0.0});
  const Primitive r = cc.ic(Vec2{0.45, 0.0});
  Simulation sim(std::move(cc));
  sim.run();
  oracle::RiemannState ol{l.rho, l.u[0], l.u[1], l.p};
  oracle::RiemannState orr{r.rho, r.u[0], r.u[1], r.p};
  const double gamma = sim.config().par.gamma;
  double l1 = 0.0, area = 0.0;
  for (int c = 0; c < sim.dual().ncells; ++c) {
    const Vec2 x = sim.cell_position(c);
    const auto ex = oracle::euler_exact(ol, orr, gamma, (x.x - xd) / te);
    l1 += sim.dual().area[c] * std::abs(sim.fields().q[c][kRho] - ex.rho);
    area += sim.dual().area[c];
  }
  l1 /= 0.1;  // channel height: report the per-unit-length L1 of the cut
  cutOut = cut_profile(sim);
  dxOut = 1.0 / sim.config().nx;
  return l1;
}

// wave positions of the exact Euler solution: rarefaction head, contact, shock(s)
struct ExactWaves {
  std::vector<std::pair<std::string, double>> waves;  // (kind, position at te)
};

ExactWaves exact_waves(const Primitive& l, const Primitive& r, double gamma, double xd,
                       double te) {
  ExactWaves w;
  oracle::RiemannState ol{l.rho, l.u[0], l.u[1], l.p};
  oracle::RiemannState orr{r.rho, r.u[0], r.u[1], r.p};
  const auto s = oracle::euler_star(ol, orr, gamma);
  const double cl = std::sqrt(gamma * l.p / l.rho), cr = std::sqrt(gamma * r.p / r.rho);
  const double g1 = (gamma - 1.0) / (2.0 * gamma), g2 = (gamma + 1.0) / (2.0 * gamma);
  if (s.p > l.p) {
    w.waves.emplace_back("left-shock", xd + te * (l.u[0] - cl * std::sqrt(g2 * s.p / l.p + g1)));
  } else {
    w.waves.emplace_back("left-head", xd + te * (l.u[0] - cl));
  }
  // contact only when the density jumps across it
  const double rhoStarL = (s.p > l.p) ? l.rho * (s.p / l.p + (gamma - 1) / (gamma + 1)) /
                                            ((gamma - 1) / (gamma + 1) * s.p / l.p + 1.0)
                                      : l.rho * std::pow(s.p / l.p, 1.0 / gamma);
  const double rhoStarR = (s.p > r.p) ? r.rho * (s.p / r.p + (gamma - 1) / (gamma + 1)) /
                                            ((gamma - 1) / (gamma + 1) * s.p / r.p + 1.0)
                                      : r.rho * std::pow(s.p / r.p, 1.0 / gamma);
  if (std::abs(rhoStarL - rhoStarR) > 5e-3 * std::max(rhoStarL, rhoStarR))
    w.waves.emplace_back("contact", xd + te * s.u);
  if (s.p > r.p) {
    w.waves.emplace_back("right-shock",
                         xd + te * (r.u[0] + cr * std::sqrt(g2 * s.p / r.p + g1)));
  } else {
    w.waves.emplace_back("right-head", xd + te * (r.u[0] + cr));
  }
  return w;
}

// jump-cluster detection for the solid Riemann fans
std::vector<double> jump_clusters(const std::vector<double>& x,
                                  const std::vector<double>& indicator, double thresholdFrac,
                                  double minSeparation) {
  double big = 0.0;
  for (double v : indicator) big = std::max(big, v);
  const double thr = thresholdFrac * big;
  std::vector<double> centers;
  double wsum = 0.0, xsum = 0.0;
  bool inCluster = false;
  double lastX = -1e300;
  for (size_t i = 0; i < x.size(); ++i) {
    if (indicator[i] > thr) {
      if (inCluster && x[i] - lastX > minSeparation) {
        centers.push_back(xsum / wsum);
        wsum = xsum = 0.0;
      }
      inCluster = true;
      wsum += indicator[i];
      xsum += indicator[i] * x[i];
      lastX = x[i];
    } else if (inCluster && x[i] - lastX > minSeparation) {
      centers.push_back(xsum / wsum);
      wsum = xsum = 0.0;
      inCluster = false;
    }
  }
  if (inCluster && wsum > 0.0) centers.push_back(xsum / wsum);
  return centers;
}

// =============================== criteria ===============================

void criterion1() {
  const LadderResult lr = run_ladder("tgv", 1e5, 1, 4);
  const auto& last = lr.rows.back();
  char buf[256];
  std::snprintf(buf, sizeof(buf), "O(m)=%.2f O(p)=%.2f e(rho)=%.2e e(m)=%.2e e(p)=%.2e",
                last.oM, last.oP, last.eRho, last.eM, last.eP);
  bool pass = last.oM >= 1.8 && last.oP >= 1.8;
  pass = pass && last.eRho < 2.0 * 9.16e-5 && last.eRho > 0.5 * 9.16e-5;
  pass = pass && last.eM < 2.0 * 1.90e-3 && last.eM > 0.5 * 1.90e-3;
  pass = pass && last.eP < 2.0 * 7.56e-3 && last.eP > 0.5 * 7.56e-3;
  report(1, "Taylor-Green convergence", pass, buf);
}

void criterion2() {
  bool pass = true;
  std::string detail;
  const double ref[2] = {1.91e-3, 1.90e-3};
  const double p0s[2] = {1e4, 1e6};
  for (int i = 0; i < 2; ++i) {
    const LadderResult lr = run_ladder("tgv", p0s[i], 1, 4);
    const auto& last = lr.rows.back();
    char buf[128];
    std::snprintf(buf, sizeof(buf), "[p0=%.0e O(m)=%.2f e(m)=%.2e] ", p0s[i], last.oM,
                  last.eM);
    detail += buf;
    pass = pass && last.oM >= 1.8 && last.eM < 2.0 * ref[i] && last.eM > 0.5 * ref[i];
  }
  report(2, "low-Mach Taylor-Green", pass, detail);
}

void criterion3() {
  const LadderResult lr = run_ladder("ivortex", 1e4, 2, 5);
  const auto& last = lr.rows.back();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "O(m)=%.2f e(m)=%.2e (ALE, M=1e-2)", last.oM, last.eM);
  const bool pass = last.oM >= 1.8 && last.eM < 2.0 * 9.27e-4 && last.eM > 0.5 * 9.27e-4;
  report(3, "isentropic vortex ALE", pass, buf);
}

void criterion4() {
  bool allPass = true;
  for (int id = 1; id <= 7; ++id) {
    const std::string name = "rp" + std::to_string(id);
    Cut cut;
    double dx = 0.0;
    const double l1 = run_rp_l1(name, cut, dx);
    const double thr = kRpL1Frozen.at(name);
    bool pass = l1 < thr;

    // wave positions within two cell widths
    Config cfg = base_config(name);
    CaseConfig cc = init_case(cfg);
    const double xd = (name == "rp4") ? -0.2 : (name == "rp5" ? 0.3 : 0.0);
    const Primitive l = cc.ic(Vec2{-0.45, 0.0});
    const Primitive r = cc.ic(Vec2{0.45, 0.0});
    const ExactWaves w = exact_waves(l, r, cc.par.gamma, xd, cc.endTime);
    std::string wdetail;
    for (const auto& [kind, xw] : w.waves) {
      if (xw < cut.x.front() + 0.02 || xw > cut.x.back() - 0.02) continue;
      double xnum;
      if (kind.find("head") != std::string::npos) {
        // first departure from the upstream constant
        const bool fromLeft = kind[0] == 'l';
        const double up = fromLeft ? l.rho : r.rho;
        const double jumpScale = std::abs(l.rho - r.rho) + 0.1 * std::abs(up);
        xnum = xw;
        if (fromLeft) {
          for (size_t i = 0; i < cut.x.size(); ++i)
            if (std::abs(cut.prim[i].rho - up) > 0.02 * jumpScale) {
              xnum = cut.x[i];
              break;
            }
        } else {
          for (size_t i = cut.x.size(); i-- > 0;)
            if (std::abs(cut.prim[i].rho - up) > 0.02 * jumpScale) {
              xnum = cut.x[i];
              break;
            }
        }
      } else {
        xnum = locate_jump(
            cut, [](const Primitive& prim) { return prim.rho; }, xw - 0.06, xw + 0.06);
      }
      const bool wok = std::abs(xnum - xw) <= 2.0 * dx + 1e-12;
      if (!wok) {
        char wb[96];
        std::snprintf(wb, sizeof(wb), " %s off by %.4f>", kind.c_str(),
                      std::abs(xnum - xw));
        wdetail += wb;
        pass = false;
      }
    }
    char buf[192];
    std::snprintf(buf, sizeof(buf), "L1(rho)=%.3e (thr %.1e)%s", l1, thr, wdetail.c_str());
    report(4, name + " vs exact Riemann", pass, buf);
    allPass = allPass && pass;
  }
  (void)allPass;
}

void criterion5() {
  for (int id = 8; id <= 9; ++id) {
    const std::string name = "rp" + std::to_string(id);
    Config cfg = base_config(name);
    CaseConfig cc = init_case(cfg);
    const Primitive l = cc.ic(Vec2{-0.45, 0.0});
    const Primitive r = cc.ic(Vec2{0.45, 0.0});
    oracle::Case1d c1;
    c1.rhoL = l.rho;
    c1.rhoR = r.rho;
    c1.u1L = l.u[0];
    c1.u1R = r.u[0];
    c1.u2L = l.u[1];
    c1.u2R = r.u[1];
    c1.pL = l.p;
    c1.pR = r.p;
    c1.time = cc.endTime;
    c1.par = cc.par;
    const oracle::Profile1d prof = oracle::reference_1d(c1, oracle::System1d::gpr, 4000);

    Simulation sim(std::move(cc));
    sim.run();
    const Cut cut = cut_profile(sim);
    auto sample = [&](const std::vector<double>& f, double x) {
      const double dx1 = 1.0 / 4000;
      const double s = (x - prof.x.front()) / dx1;
      const int i = std::clamp(static_cast<int>(s), 0, 3999);
      return f[i];
    };
    double l1 = 0.0;
    for (size_t i = 0; i < cut.x.size(); ++i)
      l1 += cut.dx * std::abs(cut.prim[i].rho - sample(prof.rho, cut.x[i]));
    const double thr = (id == 8) ? kRp8L1Frozen : kRp9L1Frozen;
    bool pass = l1 < thr;

    // wave census: clusters of the combined jump indicator on solver and oracle
    auto indicatorOf = [](const std::vector<double>& rho, const std::vector<double>& u2,
                          const std::vector<double>& j1) {
      std::vector<double> ind(rho.size(), 0.0);
      for (size_t i = 1; i < rho.size(); ++i)
        ind[i] = std::abs(rho[i] - rho[i - 1]) + std::abs(u2[i] - u2[i - 1]) +
                 std::abs(j1[i] - j1[i - 1]);
      return ind;
    };
    std::vector<double> cr(cut.x.size()), cu2(cut.x.size()), cj1(cut.x.size());
    for (size_t i = 0; i < cut.x.size(); ++i) {
      cr[i] = cut.prim[i].rho;
      cu2[i] = cut.prim[i].u[1];
      cj1[i] = cut.prim[i].J[0];
    }
    const auto numClusters = jump_clusters(cut.x, indicatorOf(cr, cu2, cj1), 0.08, 0.03);
    const auto refClusters = jump_clusters(prof.x, indicatorOf(prof.rho, prof.u2, prof.J1),
                                           0.08, 0.03);
    const int expected = (id == 8) ? 5 : 7;
    char buf[256];
    bool waveOk = static_cast<int>(refClusters.size()) == expected &&
                  static_cast<int>(numClusters.size()) == expected;
    if (waveOk)
      for (int k = 0; k < expected; ++k)
        waveOk = waveOk && std::abs(numClusters[k] - refClusters[k]) < 0.03;
    pass = pass && waveOk;
    std::snprintf(buf, sizeof(buf), "L1(rho)=%.3e (thr %.1e), waves %zu/%zu expect %d", l1,
                  thr, numClusters.size(), refClusters.size(), expected);
    report(5, name + " vs 1D GPR oracle", pass, buf);
  }
}

void criterion6() {
  std::vector<double> speeds = {0.0, 5.0, 10.0, 20.0};
  std::vector<double> curlA, curlJ;
  for (double c : speeds) {
    Config cfg = base_config("explosion-solid");
    cfg.set("glm.ca", std::to_string(c));
    cfg.set("glm.cj", std::to_string(c));
    cfg.set("mesh.nx", "128");
    Simulation sim(init_case(cfg));
    sim.run();
    const auto [ca, cj] = sim.curl_monitor();
    curlA.push_back(ca);
    curlJ.push_back(cj);
    std::printf("  cA=cJ=%-4g curlA=%.5e curlJ=%.5e\n", c, ca, cj);
  }
  bool pass = true;
  for (size_t i = 1; i < speeds.size(); ++i)
    pass = pass && curlA[i] < curlA[i - 1] && curlJ[i] < curlJ[i - 1];
  report(6, "GLM curl cleaning decay", pass, "speeds 0,5,10,20");
}

void criterion7() {
  Config cfg = base_config("stokes-first");
  cfg.set("mu", "1e-2");
  Simulation sim(init_case(cfg));
  sim.run();
  double linf = 0.0;
  for (int c = 0; c < sim.dual().ncells; ++c) {
    const Vec2 x = sim.cell_position(c);
    const Primitive prim =
        conserved_to_primitive(sim.fields().q[c], sim.config().par, c);
    linf = std::max(linf,
                    std::abs(prim.u[1] - oracle::stokes_first(x.x, sim.time(), 1e-2)));
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "Linf(u2)=%.3e (thr %.0e)", linf, kStokesLinf);
  report(7, "first Stokes vs erf", linf < kStokesLinf, buf);
}

void criterion8() {
  Config cfg = base_config("explosion-fluid");
  Simulation sim(init_case(cfg));
  sim.run();

  oracle::Case1d c1;
  c1.rhoL = 1.0;
  c1.rhoR = 0.125;
  c1.pL = 1.0;
  c1.pR = 0.1;
  c1.xd = 0.5;
  c1.x0 = 0.0;
  c1.x1 = 1.0;
  c1.time = 0.25;
  c1.par.set_gamma_cv(1.4, 2.5);
  const oracle::Profile1d prof = oracle::reference_1d(c1, oracle::System1d::euler_radial, 4000);
  const Cut cut = cut_profile(sim);
  auto sample = [&](const std::vector<double>& f, double x) {
    const double dx1 = 1.0 / 4000;
    const double s = (x - prof.x.front()) / dx1;
    const int i = std::clamp(static_cast<int>(s), 0, 3999);
    return f[i];
  };
  double l1r = 0.0, l1u = 0.0, l1p = 0.0;
  int npts = 0;
  for (size_t i = 0; i < cut.x.size(); ++i) {
    if (cut.x[i] < 0.0 || cut.x[i] > 1.0) continue;
    l1r += std::abs(cut.prim[i].rho - sample(prof.rho, cut.x[i]));
    l1u += std::abs(cut.prim[i].u[0] - sample(prof.u1, cut.x[i]));
    l1p += std::abs(cut.prim[i].p - sample(prof.p, cut.x[i]));
    ++npts;
  }
  l1r *= cut.dx;
  l1u *= cut.dx;
  l1p *= cut.dx;
  bool pass = npts > 100 && l1r < kExplosionL1Frozen;

  // x <-> y symmetry via nearest-cell pairing on the mirror-symmetric mesh
  std::map<std::pair<long, long>, int> lookup;
  const auto& dm = sim.dual();
  auto key = [&](Vec2 x) {
    return std::make_pair(std::lround(x.x * 1e7), std::lround(x.y * 1e7));
  };
  for (int c = 0; c < dm.ncells; ++c) lookup[key(sim.cell_position(c))] = c;
  double sym = 0.0;
  int paired = 0;
  for (int c = 0; c < dm.ncells; ++c) {
    const Vec2 x = sim.cell_position(c);
    const auto it = lookup.find(key(Vec2{x.y, x.x}));
    if (it == lookup.end()) continue;
    ++paired;
    sym = std::max(sym,
                   std::abs(sim.fields().q[c][kRho] - sim.fields().q[it->second][kRho]));
  }
  pass = pass && paired > dm.ncells / 2 && sym < 1e-3;
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "L1(rho)=%.3e (thr %.1e) L1(u1)=%.3e L1(p)=%.3e sym=%.2e", l1r,
                kExplosionL1Frozen, l1u, l1p, sym);
  report(8, "fluid circular explosion", pass, buf);
}

void criterion9();
void criterion10();

}  // namespace

namespace {

void criterion9() {
  bool all = true;
  std::string detail;
  std::mt19937 gen(4242);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  // GCL + free-stream on random valid motions
  {
    PrimalMesh pm = make_square_mesh(1.0, 1.0, 8, 8, true, true);
    DualMesh dm = build_dual(pm);
    MaterialParams par;
    par.set_gamma_cv(1.4, 2.5);
    par.cs = 0.3;
    par.ch = 0.2;
    par.cA = 1.0;
    par.cJ = 0.5;
    Primitive prim;
    prim.rho = 1.1;
    prim.p = 0.9;
    prim.u[0] = 0.2;
    prim.u[1] = -0.1;
    prim.A(0, 1) = 0.1;
    prim.J[0] = 0.05;
    prim.phi(1, 0) = 0.07;
    prim.psi[1] = 0.03;
    prim.T = temperature(prim.rho, prim.p, par);
    const State q0 = primitive_to_conserved(prim, par);
    TransportConfig tc;
    tc.cAlpha = 0.3;
    double gclMax = 0.0, fsMax = 0.0;
    const double twoPi = 2.0 * std::acos(-1.0);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Vec2> xn = pm.X;
      const double a1 = unif(gen), a2 = unif(gen), b1 = unif(gen), b2 = unif(gen);
      for (int v = 0; v < pm.nv; ++v) {
        const double sx = pm.X[v].x, sy = pm.X[v].y;
        xn[v].x += 0.005 * (a1 * std::sin(twoPi * sx) * std::cos(twoPi * sy) +
                            a2 * std::sin(2 * twoPi * sy));
        xn[v].y += 0.005 * (b1 * std::cos(twoPi * sx) * std::sin(twoPi * sy) +
                            b2 * std::sin(2 * twoPi * sx));
      }
      const double dt = 0.003;
      const SpaceTimeGeom st = spacetime_face_normals(pm, dm, pm.X, xn, dt);
      for (int c = 0; c < dm.ncells; ++c) gclMax = std::max(gclMax, gcl_residual(st, dm, c));
      FieldSet f;
      f.q.assign(dm.ncells, q0);
      f.plag.assign(dm.ncells, prim.p);
      transport_step(f, pm, dm, st, par, tc, {}, dt);
      for (int c = 0; c < dm.ncells; ++c)
        for (int s = 0; s < kNumVars; ++s)
          fsMax = std::max(fsMax, std::abs(f.qStar[c][s] - q0[s]) /
                                      std::max(1.0, std::abs(q0[kE])));
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "gcl=%.1e freestream=%.1e ", gclMax, fsMax);
    detail += buf;
    all = all && gclMax < 1e-13 && fsMax < 1e-12;
  }

  // global mass conservation per step on the Sod box
  {
    Config cfg = base_config("sod-box");
    cfg.set("mesh.nx", "24");
    cfg.set("end_time", "0.05");
    Simulation sim(init_case(cfg));
    const RunStats stats = sim.run();
    double drift = 0.0;
    for (size_t i = 1; i < stats.massTotal.size(); ++i)
      drift = std::max(drift, std::abs(stats.massTotal[i] - stats.massTotal[i - 1]));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "massdrift=%.1e ", drift);
    detail += buf;
    all = all && drift < 1e-12 * stats.massTotal.front();
  }

  // det(A) preservation in relaxation
  {
    MaterialParams par;
    par.set_gamma_cv(1.4, 1.0);
    par.cs = 1.0;
    par.ch = 1.0;
    par.rho0 = 1.0;
    par.T0 = 1.0;
    RelaxConfig rc;
    double worst = 0.0;
    for (double tau : {1e-6, 1e-3, 1.0, 1e20}) {
      par.tau1 = par.tau2 = tau;
      Mat3 A = Mat3::identity();
      A(0, 1) = 0.35;
      A(1, 2) = -0.2;
      A(2, 0) = 0.15;
      Vec3 J{{0.2, -0.1, 0.3}};
      const double d0 = det(A);
      relax_cell(A, J, 1.0, 1.0, 0.1, par, rc);
      worst = std::max(worst, std::abs(det(A) - d0));
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "det-drift=%.1e ", worst);
    detail += buf;
    all = all && worst < 1e-8;
  }

  // closure finite differences and the curl-block identity
  {
    MaterialParams par;
    par.set_gamma_cv(1.4, 2.5);
    par.cs = 1.1;
    par.ch = 0.7;
    par.cA = 1.3;
    par.cJ = 0.9;
    double worstFd = 0.0, worstCurl = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      Primitive prim;
      prim.rho = 1.0 + 0.3 * unif(gen);
      for (int i = 0; i < 3; ++i) {
        prim.u[i] = 0.3 * unif(gen);
        prim.J[i] = 0.3 * unif(gen);
        prim.psi[i] = 0.3 * unif(gen);
      }
      prim.A = Mat3::identity();
      for (int i = 0; i < 9; ++i) {
        prim.A.m[i] += 0.25 * unif(gen);
        prim.phi.m[i] = 0.3 * unif(gen);
      }
      prim.p = 1.0 + 0.3 * unif(gen);
      prim.T = temperature(prim.rho, prim.p, par);
      const State q0 = primitive_to_conserved(prim, par);
      const DualVariables d = dual_variables(q0, par);
      const Mat3 sig = shear_stress(prim.rho, prim.A, par);
      Mat3 omega;
      Vec3 qf;
      thermal_stress_and_heatflux(prim.rho, prim.T, prim.J, par, omega, qf);
      auto evalE = [&](const State& q) {
        Primitive pp = conserved_to_primitive(q, par);
        pp.p = prim.p;
        return energy_decompose(pp, par).total();
      };
      const double h = 1e-6;
      auto fd = [&](int slot) {
        State qp = q0, qm = q0;
        qp[slot] += h;
        qm[slot] -= h;
        return (evalE(qp) - evalE(qm)) / (2.0 * h);
      };
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
          double s = 0.0;
          for (int j = 0; j < 3; ++j) s += prim.A(j, i) * fd(kA + 3 * j + k);
          worstFd = std::max(worstFd, std::abs(sig(i, k) - s) / std::max(1.0, std::abs(s)));
          const double o = prim.J[i] * fd(kJ + k);
          worstFd = std::max(worstFd,
                             std::abs(omega(i, k) - o) / std::max(1.0, std::abs(o)));
          worstFd = std::max(worstFd, std::abs(d.gammaik(i, k) - fd(kPhi + 3 * i + k)) /
                                          std::max(1.0, std::abs(d.gammaik(i, k))));
        }
      for (int k = 0; k < 3; ++k)
        worstFd = std::max(worstFd, std::abs(d.xi[k] - fd(kPsi + k)) /
                                        std::max(1.0, std::abs(d.xi[k])));

      // Proposition identity
      double gA[3][3][3], gPhi[3][3][3], gJ[3][3], gPsi[3][3];
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
          gJ[j][l] = unif(gen);
          gPsi[j][l] = unif(gen);
          for (int k = 0; k < 3; ++k) {
            gA[j][l][k] = unif(gen);
            gPhi[j][l][k] = unif(gen);
          }
        }
      double lhs = 0.0, rhs = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
          for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l) {
              const double eps = levi_civita(i, j, l);
              if (eps == 0.0) continue;
              lhs += d.alpha(i, k) * par.cA * eps * gPhi[j][l][k] -
                     d.gammaik(i, k) * par.cA * eps * gA[j][l][k];
            }
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 3; ++l) {
            const double eps = levi_civita(k, j, l);
            if (eps == 0.0) continue;
            lhs += d.beta[k] * par.cJ * eps * gPsi[j][l] -
                   d.xi[k] * par.cJ * eps * gJ[j][l];
          }
      const Mat3 Gd = deviator(metric(prim.A));
      const Mat3 Dd = deviator(metric(prim.phi));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 3; ++l) {
            const double eps = levi_civita(i, j, l);
            if (eps == 0.0) continue;
            for (int k = 0; k < 3; ++k) {
              double am = 0.0, fm = 0.0;
              for (int m = 0; m < 3; ++m) {
                am += prim.A(i, m) * Gd(m, k);
                fm += prim.phi(l, m) * Dd(m, k);
              }
              rhs += prim.rho * par.cA * par.cs * par.cs * eps *
                     (am * gPhi[j][l][k] + fm * gA[j][i][k]);
            }
          }
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 3; ++l) {
            const double eps = levi_civita(k, j, l);
            if (eps == 0.0) continue;
            rhs += par.cJ * par.ch * par.ch * prim.rho * eps *
                   (prim.psi[l] * gJ[j][k] + prim.J[k] * gPsi[j][l]);
          }
      worstCurl = std::max(worstCurl, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "fd=%.1e curlid=%.1e ", worstFd, worstCurl);
    detail += buf;
    all = all && worstFd < 1e-6 && worstCurl < 1e-12;
  }

  // pressure matrix symmetry/SPD and the rest state over 100 steps
  {
    PrimalMesh pm = make_square_mesh(1.0, 1.0, 8, 8, false, false);
    DualMesh dm = build_dual(pm);
    MaterialParams par;
    par.set_gamma_cv(1.4, 2.5);
    PressureInputs in;
    in.hElem.assign(pm.ntri(), 1.7);
    in.mElem.assign(pm.ntri(), Vec2{0.1, 0.2});
    in.eStarElem.assign(pm.ntri(), 2.5);
    in.e2Elem.assign(pm.ntri(), 0.02);
    in.e3456Elem.assign(pm.ntri(), 0.01);
    in.pVertOld.assign(pm.nv, 1.0);
    in.hDual.assign(dm.ncells, 1.7);
    in.mBoundary.assign(dm.ncells, Vec2{0.1, 0.2});
    PressureSystem sys;
    assemble(in, pm, dm, par, {}, 0.02, sys);
    const double asym = sys.mat.max_asymmetry() / sys.mat.max_abs();
    std::vector<double> x;
    bool spd = true;
    try {
      cg_solve(sys.mat, sys.rhs, x, 1e-10, 10 * pm.nv);
    } catch (const std::exception&) {
      spd = false;
    }

    Config cfg = base_config("rest");
    cfg.set("end_time", "1.0");
    cfg.set("max_dt", "0.01");
    Simulation sim(init_case(cfg));
    const State q0 = sim.fields().q[0];
    sim.run();
    double dev = 0.0;
    for (int c = 0; c < sim.dual().ncells; ++c)
      for (int s = 0; s < kNumVars; ++s)
        dev = std::max(dev, std::abs(sim.fields().q[c][s] - q0[s]));
    char buf[96];
    std::snprintf(buf, sizeof(buf), "asym=%.1e rest=%.1e", asym, dev);
    detail += buf;
    all = all && asym < 1e-14 && spd && dev < 1e-12;
  }

  report(9, "property suite", all, detail);
}

void criterion10() {
  Config cfg = base_config("rotor");
  Simulation sim(init_case(cfg));
  sim.run();
  const auto& dm = sim.dual();

  // four-fold rotational symmetry of rho and p via nearest-cell pairing
  std::map<std::pair<long, long>, int> lookup;
  auto key = [&](Vec2 x) {
    return std::make_pair(std::lround(x.x * 1e7), std::lround(x.y * 1e7));
  };
  for (int c = 0; c < dm.ncells; ++c) lookup[key(sim.cell_position(c))] = c;
  double symRho = 0.0, symP = 0.0;
  int paired = 0;
  const auto& par = sim.config().par;
  for (int c = 0; c < dm.ncells; ++c) {
    const Vec2 x = sim.cell_position(c);
    const auto it = lookup.find(key(Vec2{-x.y, x.x}));
    if (it == lookup.end()) continue;
    ++paired;
    const Primitive a = conserved_to_primitive(sim.fields().q[c], par, c);
    const Primitive b = conserved_to_primitive(sim.fields().q[it->second], par, it->second);
    symRho = std::max(symRho, std::abs(a.rho - b.rho) / a.rho);
    symP = std::max(symP, std::abs(a.p - b.p) / std::abs(a.p));
  }

  // causality: the disturbance stays inside the widest wave cone
  double cmax = 0.0, outside = 0.0, insideDev = 0.0;
  for (int c = 0; c < dm.ncells; ++c) {
    const Primitive prim = conserved_to_primitive(sim.fields().q[c], par, c);
    cmax = std::max(cmax, max_signal_speed(prim, par, Vec2{1, 0}, true));
  }
  const double rmax = 0.2 + cmax * sim.time() + 6.0 * (2.0 / sim.config().nx);
  for (int c = 0; c < dm.ncells; ++c) {
    const Vec2 x = sim.cell_position(c);
    const double r = std::sqrt(x.x * x.x + x.y * x.y);
    const Primitive prim = conserved_to_primitive(sim.fields().q[c], par, c);
    const double dev = std::abs(prim.rho - 1.0) + std::abs(prim.p - 1.0);
    if (r > rmax)
      outside = std::max(outside, dev);
    else
      insideDev = std::max(insideDev, dev);
  }
  const bool pass = paired > dm.ncells / 2 && symRho < 1e-2 && symP < 1e-2 &&
                    outside < 1e-3 && insideDev > 1e-2;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "sym(rho)=%.2e sym(p)=%.2e outside=%.1e inside=%.2f paired=%d", symRho, symP,
                outside, insideDev, paired);
  report(10, "solid rotor", pass, buf);
}

}  // namespace

int main(int argc, char** argv) {
  int criterion = 0;
  for (int i = 1; i < argc - 1; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0) criterion = std::atoi(argv[i + 1]);
  if (criterion < 1 || criterion > 10) {
    std::printf("usage: acceptance --criterion N   (N in 1..10)\n");
    return 2;
  }
  try {
    switch (criterion) {
      case 1: criterion1(); break;
      case 2: criterion2(); break;
      case 3: criterion3(); break;
      case 4: criterion4(); break;
      case 5: criterion5(); break;
      case 6: criterion6(); break;
      case 7: criterion7(); break;
      case 8: criterion8(); break;
      case 9: criterion9(); break;
      case 10: criterion10(); break;
    }
  } catch (const std::exception& e) {
    std::printf("criterion %2d ABORTED: %s\n", criterion, e.what());
    return 1;
  }
  return gFails == 0 ? 0 : 1;
}

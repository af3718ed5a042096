#include "gpr/pressure.hpp"

#include <cmath>

namespace gpr {

std::vector<double> dual_to_primal(const std::vector<double>& cellField, const PrimalMesh& pm,
                                   const DualMesh& dm) {
  std::vector<double> out(pm.ntri(), 0.0);
  for (int t = 0; t < pm.ntri(); ++t) {
    double s = 0.0;
    for (int e = 0; e < 3; ++e) {
      const int f = pm.triFace[t][e];
      const int gen = (pm.face[f].tL == t) ? 0 : 1;
      s += cellField[f] * dm.genArea[f][gen];
    }
    out[t] = s / pm.triArea[t];
  }
  return out;
}

std::vector<double> vertex_density(const std::vector<double>& rhoElem, const PrimalMesh& pm) {
  std::vector<double> rhoVert(pm.nv, 0.0);
  for (int v = 0; v < pm.nv; ++v) {
    double s = 0.0, w = 0.0;
    for (int t : pm.vertTris[v]) {
      s += rhoElem[t] * pm.triArea[t];
      w += pm.triArea[t];
    }
    rhoVert[v] = (w > 0.0) ? s / w : 1.0;
  }
  return rhoVert;
}

void vertex_enthalpy(const std::vector<double>& pVert, const std::vector<double>& rhoVert,
                     const MaterialParams& par, const PrimalMesh& pm,
                     std::vector<double>& hVert, std::vector<double>& hDual) {
  hVert.resize(pm.nv);
  for (int v = 0; v < pm.nv; ++v) hVert[v] = enthalpy(rhoVert[v], pVert[v], par);
  hDual.resize(pm.nfaces());
  for (int f = 0; f < pm.nfaces(); ++f)
    hDual[f] = 0.5 * (hVert[pm.face[f].v0] + hVert[pm.face[f].v1]);
}

void assemble(const PressureInputs& in, const PrimalMesh& pm, const DualMesh& dm,
              const MaterialParams& par, const BcMap& bcs, double dt, PressureSystem& sys) {
  const double ig = 1.0 / (par.gamma - 1.0);
  const double kOff = par.p_offset() * ig;  // constant part of E1

  if (sys.mat.size() != pm.nv) {
    std::vector<std::vector<int>> cols(pm.nv);
    for (int t = 0; t < pm.ntri(); ++t)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) cols[pm.tri[t][a]].push_back(pm.tri[t][b]);
    for (int v = 0; v < pm.nv; ++v) cols[v].push_back(v);
    sys.mat.build_pattern(pm.nv, cols);
  }
  sys.mat.zero();
  sys.rhs.assign(pm.nv, 0.0);
  sys.dirichletRows.clear();
  sys.dirichletVals.clear();

  for (int t = 0; t < pm.ntri(); ++t) {
    const double area = pm.triArea[t];
    const double mConst = area / 12.0;
    const double volConst = (area / 3.0) * (in.eStarElem[t] - in.e2Elem[t] - in.e3456Elem[t]);
    for (int a = 0; a < 3; ++a) {
      const int va = pm.tri[t][a];
      for (int b = 0; b < 3; ++b) {
        const int vb = pm.tri[t][b];
        const double mass = mConst * ((a == b) ? 2.0 : 1.0);
        sys.mat.add(va, vb,
                    ig * mass + dt * dt * in.hElem[t] *
                                    area * dot(pm.gradLambda[t][a], pm.gradLambda[t][b]));
        // E1^n through the consistent mass matrix
        sys.rhs[va] -= ig * mass * in.pVertOld[vb];
      }
      sys.rhs[va] += volConst - kOff * area / 3.0;
      sys.rhs[va] += dt * in.hElem[t] * area * dot(in.mElem[t], pm.gradLambda[t][a]);
    }
  }

  // boundary integral -dt oint h (rho u . n) z dS and strong pressure rows
  std::vector<char> strongMark(pm.nv, 0);
  for (int f = 0; f < pm.nfaces(); ++f) {
    const auto& fc = pm.face[f];
    if (fc.tR >= 0) continue;
    const auto it = bcs.find(fc.tag);
    const BoundaryCondition bc = (it != bcs.end()) ? it->second : BoundaryCondition{};
    if (bc.kind == BcKind::slip_wall || bc.kind == BcKind::no_slip_wall) continue;
    if (bc.kind == BcKind::pressure) {
      for (int v : {fc.v0, fc.v1}) {
        if (strongMark[v]) continue;
        strongMark[v] = 1;
        sys.dirichletRows.push_back(v);
        sys.dirichletVals.push_back(bc.pBc - in.pVertOld[v]);
      }
      continue;
    }
    const Vec2 c0 = pm.corner(fc.tL, fc.eL);
    const Vec2 c1 = pm.corner(fc.tL, (fc.eL + 1) % 3);
    const Vec2 nw = perp(c1 - c0);  // outward, length-weighted
    const double mdotn = dot(in.mBoundary[f], nw);
    const double contrib = -dt * in.hDual[f] * mdotn * 0.5;
    sys.rhs[fc.v0] += contrib;
    sys.rhs[fc.v1] += contrib;
  }

  if (!sys.dirichletRows.empty())
    sys.mat.apply_dirichlet(sys.dirichletRows, sys.dirichletVals, sys.rhs);
}

namespace {

struct ElemFields {
  std::vector<double> rhoElem, eStarElem, e3456Elem;
  std::vector<double> rhoVert;
};

Vec2 momentum2(const State& q) { return Vec2{q[kMom + 0], q[kMom + 1]}; }

}  // namespace

PressureStageStats picard_pressure_stage(std::vector<State>& qStar, std::vector<double>& pVert,
                                         const PrimalMesh& pm, const DualMesh& dm,
                                         const MaterialParams& par, const BcMap& bcs,
                                         const PressureConfig& pc, double dt,
                                         std::vector<double>& hVertOut,
                                         std::vector<double>& hDualOut) {
  if (pc.nPicard < 1) throw std::domain_error("picard_pressure_stage: n_picard >= 1 required");
  const int nc = dm.ncells;

  // fixed element data for the whole stage
  std::vector<double> rhoDual(nc), eStarDual(nc), e3456Dual(nc);
  std::vector<Vec2> mStar(nc);
  for (int c = 0; c < nc; ++c) {
    rhoDual[c] = qStar[c][kRho];
    eStarDual[c] = qStar[c][kE];
    mStar[c] = momentum2(qStar[c]);
    Primitive prim;  // energies from the post-relaxation fields
    prim.rho = rhoDual[c];
    for (int i = 0; i < 9; ++i) prim.A.m[i] = qStar[c][kA + i];
    for (int i = 0; i < 9; ++i) prim.phi.m[i] = qStar[c][kPhi + i];
    for (int i = 0; i < 3; ++i) prim.J[i] = qStar[c][kJ + i];
    for (int i = 0; i < 3; ++i) prim.psi[i] = qStar[c][kPsi + i];
    prim.p = 1.0;
    const EnergyParts e = energy_decompose(prim, par);
    e3456Dual[c] = e.e3 + e.e4 + e.e5 + e.e6;
  }
  PressureInputs in;
  in.eStarElem = dual_to_primal(eStarDual, pm, dm);
  in.e3456Elem = dual_to_primal(e3456Dual, pm, dm);
  const std::vector<double> rhoElem = dual_to_primal(rhoDual, pm, dm);
  const std::vector<double> rhoVert = vertex_density(rhoElem, pm);
  in.pVertOld = pVert;

  // initial enthalpy (l = 1) directly on the dual cells from p^n and rho^{n+1}
  std::vector<double> hDual(nc);
  for (int c = 0; c < nc; ++c) {
    const double pOld = 0.5 * (pVert[pm.face[c].v0] + pVert[pm.face[c].v1]);
    hDual[c] = enthalpy(rhoDual[c], pOld, par);
  }
  in.hElem = dual_to_primal(hDual, pm, dm);
  in.hDual = hDual;

  std::vector<Vec2> mDual = mStar;
  std::vector<double> e2Dual(nc);
  auto refreshKinetic = [&] {
    for (int c = 0; c < nc; ++c) {
      const double m3 = qStar[c][kMom + 2];
      e2Dual[c] =
          0.5 * (mDual[c].x * mDual[c].x + mDual[c].y * mDual[c].y + m3 * m3) / rhoDual[c];
    }
    in.e2Elem = dual_to_primal(e2Dual, pm, dm);
  };
  refreshKinetic();

  auto refreshBoundaryMomentum = [&] {
    in.mBoundary.assign(nc, Vec2{});
    for (int c = 0; c < nc; ++c) {
      if (!dm.isBoundary[c]) continue;
      const auto it = bcs.find(pm.face[c].tag);
      const BoundaryCondition bc = (it != bcs.end()) ? it->second : BoundaryCondition{};
      in.mBoundary[c] =
          (bc.kind == BcKind::dirichlet) ? Vec2{bc.exterior[kMom + 0], bc.exterior[kMom + 1]}
                                         : mDual[c];
    }
  };
  refreshBoundaryMomentum();

  // the volume term always carries the intermediate momentum m*
  in.mElem.assign(pm.ntri(), Vec2{});
  {
    std::vector<double> mx(nc), my(nc);
    for (int c = 0; c < nc; ++c) {
      mx[c] = mStar[c].x;
      my[c] = mStar[c].y;
    }
    const auto ex = dual_to_primal(mx, pm, dm);
    const auto ey = dual_to_primal(my, pm, dm);
    for (int t = 0; t < pm.ntri(); ++t) in.mElem[t] = Vec2{ex[t], ey[t]};
  }

  PressureSystem sys;
  PressureStageStats stats;
  std::vector<double> dp(pm.nv, 0.0);
  const int maxiter = std::max(100, pc.cgMaxIterFactor * pm.nv);

  for (int l = 0; l < pc.nPicard; ++l) {
    assemble(in, pm, dm, par, bcs, dt, sys);
    const CgResult cg = cg_solve(sys.mat, sys.rhs, dp, pc.cgTol, maxiter, pc.jacobi);
    stats.cgIterationsTotal += cg.iterations;
    stats.lastCgResidual = cg.residual;
    ++stats.picardIterations;

    // element gradients of delta-p, then overlap-weighted dual momentum refresh
    std::vector<Vec2> gradDp(pm.ntri(), Vec2{});
    for (int t = 0; t < pm.ntri(); ++t)
      for (int a = 0; a < 3; ++a) gradDp[t] += dp[pm.tri[t][a]] * pm.gradLambda[t][a];
    for (int c = 0; c < nc; ++c) {
      const auto& fc = pm.face[c];
      Vec2 g = gradDp[fc.tL] * dm.genArea[c][0];
      if (fc.tR >= 0) g += gradDp[fc.tR] * dm.genArea[c][1];
      g = g * (1.0 / dm.area[c]);
      mDual[c] = mStar[c] - dt * g;
    }

    // refresh h and E2 for the next iteration (and the correction stage)
    std::vector<double> pNew(pm.nv);
    for (int v = 0; v < pm.nv; ++v) pNew[v] = pVert[v] + dp[v];
    vertex_enthalpy(pNew, rhoVert, par, pm, hVertOut, hDualOut);
    if (l + 1 < pc.nPicard) {
      in.hElem = dual_to_primal(hDualOut, pm, dm);
      in.hDual = hDualOut;
      refreshKinetic();
      refreshBoundaryMomentum();
    }
  }

  for (int c = 0; c < nc; ++c) {
    qStar[c][kMom + 0] = mDual[c].x;
    qStar[c][kMom + 1] = mDual[c].y;
  }
  for (int v = 0; v < pm.nv; ++v) pVert[v] += dp[v];
  return stats;
}

void energy_correction(std::vector<State>& qStar, const std::vector<double>& hDual,
                       const PrimalMesh& pm, const DualMesh& dm, const MaterialParams& par,
                       const BcMap& bcs, double dt) {
  const int nc = dm.ncells;
  std::vector<double> eStarDual(nc);
  for (int c = 0; c < nc; ++c) eStarDual[c] = qStar[c][kE];
  std::vector<double> eElem = dual_to_primal(eStarDual, pm, dm);

  for (int t = 0; t < pm.ntri(); ++t) {
    double fluxSum = 0.0;
    for (int e = 0; e < 3; ++e) {
      const int f = pm.triFace[t][e];
      const Vec2 c0 = pm.corner(t, e);
      const Vec2 c1 = pm.corner(t, (e + 1) % 3);
      const Vec2 nw = perp(c1 - c0);  // outward of element t, length-weighted
      Vec2 m{qStar[f][kMom + 0], qStar[f][kMom + 1]};
      if (pm.face[f].tR < 0) {
        const auto it = bcs.find(pm.face[f].tag);
        const BoundaryCondition bc = (it != bcs.end()) ? it->second : BoundaryCondition{};
        if (bc.kind == BcKind::slip_wall || bc.kind == BcKind::no_slip_wall)
          m = Vec2{0.0, 0.0};
        else if (bc.kind == BcKind::dirichlet)
          m = Vec2{bc.exterior[kMom + 0], bc.exterior[kMom + 1]};
      }
      fluxSum += hDual[f] * dot(m, nw);
    }
    eElem[t] -= dt / pm.triArea[t] * fluxSum;
  }

  for (int c = 0; c < nc; ++c) {
    const auto& fc = pm.face[c];
    double s = eElem[fc.tL] * dm.genArea[c][0];
    if (fc.tR >= 0) s += eElem[fc.tR] * dm.genArea[c][1];
    qStar[c][kE] = s / dm.area[c];
  }
  (void)par;
}

}  // namespace gpr

#include "gpr/transport.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gpr {

Primitive face_primitive(const State& q, double plag, const MaterialParams& par) {
  Primitive prim;
  prim.rho = q[kRho];
  const double ir = 1.0 / prim.rho;
  for (int i = 0; i < 3; ++i) prim.u[i] = q[kMom + i] * ir;
  for (int i = 0; i < 9; ++i) prim.A.m[i] = q[kA + i];
  for (int i = 0; i < 9; ++i) prim.phi.m[i] = q[kPhi + i];
  for (int i = 0; i < 3; ++i) prim.J[i] = q[kJ + i];
  for (int i = 0; i < 3; ++i) prim.psi[i] = q[kPsi + i];
  prim.p = plag;
  prim.T = temperature(prim.rho, plag, par);
  return prim;
}

double compute_dt(const FieldSet& f, const DualMesh& dm, const MaterialParams& par,
                  const TransportConfig& tc) {
  if (tc.cfl <= 0.0 || tc.cfl > 1.0) throw std::domain_error("compute_dt: cfl out of (0,1]");
  double dt = tc.maxDt;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : dt)
#endif
  for (int c = 0; c < dm.ncells; ++c) {
    const Primitive prim = conserved_to_primitive(f.q[c], par, c);
    double lam = norm(prim.u) +
                 std::sqrt(std::max(4.0 / 3.0 * par.cs * par.cs +
                                        2.0 * par.ch * par.ch * prim.T /
                                            (prim.rho * prim.rho * par.cv),
                                    0.0));
    lam = std::max(lam, norm(prim.u) + par.cA);
    lam = std::max(lam, norm(prim.u) + par.cJ);
    if (tc.eosInDt) lam = std::max(lam, norm(prim.u) + eos_sound_speed(prim.rho, prim.p, par));
    // the added Rusanov dissipation is an explicit operator and bounds dt as well
    if (tc.cAlpha > 0.0) lam += tc.cAlpha * eos_sound_speed(prim.rho, prim.p, par);
    if (lam > 0.0) dt = std::min(dt, tc.cfl * dm.incircle[c] / lam);
  }
  return dt;
}

template <typename StateT>
void spatial_gradients(const std::vector<StateT>& cellVals, const PrimalMesh& pm,
                       const DualMesh& dm, std::vector<StateT>& gx, std::vector<StateT>& gy) {
  const int nt = pm.ntri();
  gx.assign(nt, StateT{});
  gy.assign(nt, StateT{});
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int t = 0; t < nt; ++t) {
    for (int e = 0; e < 3; ++e) {
      const StateT& v = cellVals[pm.triFace[t][e]];
      const Vec2 g = dm.gradCoef[t][e];
      for (size_t s = 0; s < v.size(); ++s) {
        gx[t][s] += g.x * v[s];
        gy[t][s] += g.y * v[s];
      }
    }
  }
}

template void spatial_gradients<State>(const std::vector<State>&, const PrimalMesh&,
                                       const DualMesh&, std::vector<State>&,
                                       std::vector<State>&);
template void spatial_gradients<RecState>(const std::vector<RecState>&, const PrimalMesh&,
                                          const DualMesh&, std::vector<RecState>&,
                                          std::vector<RecState>&);

void build_predictor(const FieldSet& f, const PrimalMesh& pm, const DualMesh& dm,
                     const MaterialParams& par, const TransportConfig& tc, double dt,
                     Predictor& pred) {
  const int nc = dm.ncells;
  pred.rec.resize(nc);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int c = 0; c < nc; ++c) pred.rec[c] = to_rec_state(f.q[c], f.plag[c], par, c);

  if (tc.order < 2) {
    pred.gradX.assign(pm.ntri(), RecState{});
    pred.gradY.assign(pm.ntri(), RecState{});
    pred.tdotGen0.assign(nc, State{});
    pred.tdotGen1.assign(nc, State{});
    pred.tdot.assign(nc, State{});
    pred.half = f.q;
    pred.gradHX.assign(pm.ntri(), State{});
    pred.gradHY.assign(pm.ntri(), State{});
    return;
  }

  spatial_gradients(pred.rec, pm, dm, pred.gradX, pred.gradY);

  pred.tdotGen0.resize(nc);
  pred.tdotGen1.resize(nc);
  pred.tdot.resize(nc);
  pred.half.resize(nc);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int c = 0; c < nc; ++c) {
    const auto& fc = pm.face[c];
    pred.tdotGen0[c] =
        transport_time_derivative(pred.rec[c], pred.gradX[fc.tL], pred.gradY[fc.tL], par);
    if (fc.tR >= 0) {
      pred.tdotGen1[c] =
          transport_time_derivative(pred.rec[c], pred.gradX[fc.tR], pred.gradY[fc.tR], par);
      const double w0 = dm.genArea[c][0] / dm.area[c];
      const double w1 = dm.genArea[c][1] / dm.area[c];
      for (int s = 0; s < kNumVars; ++s)
        pred.tdot[c][s] = w0 * pred.tdotGen0[c][s] + w1 * pred.tdotGen1[c][s];
      for (int s = 0; s < kNumVars; ++s)
        pred.half[c][s] =
            f.q[c][s] + 0.25 * dt * (pred.tdotGen0[c][s] + pred.tdotGen1[c][s]);
    } else {
      pred.tdotGen1[c] = State{};
      pred.tdot[c] = pred.tdotGen0[c];
      for (int s = 0; s < kNumVars; ++s)
        pred.half[c][s] = f.q[c][s] + 0.5 * dt * pred.tdotGen0[c][s];
    }
  }
  spatial_gradients(pred.half, pm, dm, pred.gradHX, pred.gradHY);
}

namespace {

inline double choose_slope(double s1, double s2, bool hasSecond, Limiter lim) {
  if (!hasSecond || lim == Limiter::none) return s1;
  if (lim == Limiter::eno) return (std::abs(s2) < std::abs(s1)) ? s2 : s1;
  // minmod
  if (s1 * s2 <= 0.0) return 0.0;
  return (std::abs(s2) < std::abs(s1)) ? s2 : s1;
}

}  // namespace

FaceState limited_extrapolation(const Predictor& pred, const DualMesh& dm, const PrimalMesh& pm,
                                const MaterialParams& par, const TransportConfig& tc, int cell,
                                int tri, const Vec2& faceMid, double dt) {
  FaceState out;
  if (tc.order < 2) {
    out.q = rec_to_conserved(pred.rec[cell], par);
    // keep the original conserved energy (identical up to rounding)
    out.plag = pred.rec[cell][kPlag];
    return out;
  }
  const auto& fc = pm.face[cell];
  const int gen = (fc.tL == tri) ? 0 : 1;
  const int triOther = (gen == 0) ? fc.tR : fc.tL;
  const bool hasSecond = triOther >= 0;
  // gradients are translation-invariant, so one displacement serves both candidates
  const Vec2 dx = faceMid - dm.centroidInGen[cell][gen];
  const Vec2 dxOther = dx;

  RecState vf = pred.rec[cell];
  if (tc.limitPrimitive) {
    for (int s = 0; s < kNumRec; ++s) {
      const double s1 = pred.gradX[tri][s] * dx.x + pred.gradY[tri][s] * dx.y;
      const double s2 = hasSecond ? pred.gradX[triOther][s] * dxOther.x +
                                        pred.gradY[triOther][s] * dxOther.y
                                  : 0.0;
      vf[s] += choose_slope(s1, s2, hasSecond, tc.limiter);
    }
    // invalid extrapolation falls back to the cell value
    if (vf[kRho] <= 0.0 || vf[kPrimP] < pressure_floor(par) || vf[kPlag] < pressure_floor(par))
      vf = pred.rec[cell];
    out.q = rec_to_conserved(vf, par);
    out.plag = vf[kPlag];
  } else {
    // conserved-variable reconstruction from the same gradients applied to Q
    out.q = rec_to_conserved(pred.rec[cell], par);
    out.plag = pred.rec[cell][kPlag];
    // build conserved slopes from the primitive ones by chain rule at the cell state
    // (rho u)' = rho' u + rho u', E' = e1' + sum e_i'; simplest consistent route:
    // extrapolate primitive, convert, and difference
    RecState vlin = pred.rec[cell];
    for (int s = 0; s < kNumRec; ++s) {
      const double s1 = pred.gradX[tri][s] * dx.x + pred.gradY[tri][s] * dx.y;
      vlin[s] += s1;
    }
    RecState vother = pred.rec[cell];
    if (hasSecond)
      for (int s = 0; s < kNumRec; ++s) {
        const double s2 =
            pred.gradX[triOther][s] * dxOther.x + pred.gradY[triOther][s] * dxOther.y;
        vother[s] += s2;
      }
    if (vlin[kRho] > 0.0 && vlin[kPrimP] > pressure_floor(par) &&
        (!hasSecond || (vother[kRho] > 0.0 && vother[kPrimP] > pressure_floor(par)))) {
      const State q1 = rec_to_conserved(vlin, par);
      const State q2 = hasSecond ? rec_to_conserved(vother, par) : q1;
      for (int s = 0; s < kNumVars; ++s) {
        const double d1 = q1[s] - out.q[s];
        const double d2 = q2[s] - out.q[s];
        out.q[s] += choose_slope(d1, d2, hasSecond, tc.limiter);
      }
      out.plag += choose_slope(vlin[kPlag] - out.plag, vother[kPlag] - out.plag, hasSecond,
                               tc.limiter);
    }
  }

  // half-in-time evolution in conserved space
  for (int s = 0; s < kNumVars; ++s) out.q[s] += 0.5 * dt * pred.tdot[cell][s];
  if (out.q[kRho] <= 0.0 || out.plag < pressure_floor(par)) {
    out.q = rec_to_conserved(pred.rec[cell], par);
    out.plag = pred.rec[cell][kPlag];
  }
  return out;
}

State rusanov_flux(const FaceState& left, const FaceState& right, double etaT, const Vec2& etaX,
                   const MaterialParams& par, double alphaU, double artU) {
  const double lenX = norm(etaX);
  const Primitive pl = face_primitive(left.q, left.plag, par);
  const Primitive pr = face_primitive(right.q, right.plag, par);
  State fl = transport_flux_dot_n(pl, left.plag, par, etaX);
  const State fr = transport_flux_dot_n(pr, right.plag, par, etaX);
  const double a = 0.5 * (alphaU + artU) * lenX;
  for (int s = 0; s < kNumVars; ++s) {
    fl[s] = 0.5 * (fl[s] + fr[s]) + 0.5 * etaT * (left.q[s] + right.q[s]) -
            a * (right.q[s] - left.q[s]);
  }
  return fl;
}

State path_jump(const State& qi, const State& qj, const Vec2& eta, const MaterialParams& par) {
  // 3-point Gauss-Legendre on the straight-line segment path
  static const double gs[3] = {0.5 - std::sqrt(3.0 / 20.0), 0.5, 0.5 + std::sqrt(3.0 / 20.0)};
  static const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  State dq{};
  for (int s = 0; s < kNumVars; ++s) dq[s] = qj[s] - qi[s];
  State d{};
  for (int g = 0; g < 3; ++g) {
    State qs{};
    for (int s = 0; s < kNumVars; ++s) qs[s] = qi[s] + gs[g] * dq[s];
    Primitive prim;
    prim.rho = qs[kRho];
    const double ir = 1.0 / qs[kRho];
    for (int i = 0; i < 3; ++i) prim.u[i] = qs[kMom + i] * ir;
    const State b = ncp_apply(prim, par, eta, dq);
    for (int s = 0; s < kNumVars; ++s) d[s] += gw[g] * b[s];
  }
  for (int s = 0; s < kNumVars; ++s) d[s] *= 0.5;
  return d;
}

State ghost_state(const State& inner, double innerPlag, const BoundaryCondition& bc,
                  const Vec2& nUnit, const MaterialParams& par, double& ghostPlag) {
  switch (bc.kind) {
    case BcKind::dirichlet: {
      ghostPlag = bc.exteriorPlag;
      return bc.exterior;
    }
    case BcKind::slip_wall: {
      State g = inner;
      const double mn = g[kMom + 0] * nUnit.x + g[kMom + 1] * nUnit.y;
      g[kMom + 0] -= 2.0 * mn * nUnit.x;
      g[kMom + 1] -= 2.0 * mn * nUnit.y;
      const double jn = g[kJ + 0] * nUnit.x + g[kJ + 1] * nUnit.y;
      g[kJ + 0] -= 2.0 * jn * nUnit.x;
      g[kJ + 1] -= 2.0 * jn * nUnit.y;
      ghostPlag = innerPlag;
      return g;
    }
    case BcKind::no_slip_wall: {
      State g = inner;
      const double rho = inner[kRho];
      double ke0 = 0.0, ke1 = 0.0;
      for (int i = 0; i < 3; ++i) {
        ke0 += inner[kMom + i] * inner[kMom + i];
        g[kMom + i] = 2.0 * rho * bc.wallVelocity[i] - inner[kMom + i];
        ke1 += g[kMom + i] * g[kMom + i];
      }
      for (int i = 0; i < 3; ++i) g[kJ + i] = -inner[kJ + i];
      g[kE] += 0.5 * (ke1 - ke0) / rho;
      ghostPlag = innerPlag;
      return g;
    }
    case BcKind::pressure: {
      // transmissive in the transport stage; the strong condition acts on delta-p
      ghostPlag = innerPlag;
      return inner;
    }
    case BcKind::transmissive:
    default:
      ghostPlag = innerPlag;
      return inner;
  }
}

void transport_step(FieldSet& f, const PrimalMesh& pm, const DualMesh& dm,
                    const SpaceTimeGeom& st, const MaterialParams& par, const TransportConfig& tc,
                    const BcMap& bcs, double dt) {
  const int nc = dm.ncells;
  const int nd = static_cast<int>(dm.dface.size());

  Predictor pred;
  build_predictor(f, pm, dm, par, tc, dt, pred);

  // face pass
  const int nbf = static_cast<int>(st.boundaryFaceId.size());
  std::vector<State> faceFlux(nd + nbf), faceJump(nd + nbf);

  // the reconstruction is affine along a face, so a two-point Gauss rule in chi
  // sharpens the central flux; dissipation and jump stay on the midpoint states
  const double gOff = 0.5 / std::sqrt(3.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int d = 0; d < nd; ++d) {
    const auto& df = dm.dface[d];
    const Vec2 etaX = st.etaX[d];
    const double lenX = norm(etaX);
    const FaceState li =
        limited_extrapolation(pred, dm, pm, par, tc, df.cOwn, df.tri, st.midST[d], dt);
    const FaceState rj =
        limited_extrapolation(pred, dm, pm, par, tc, df.cNbr, df.tri, st.midST[d], dt);
    double alphaU = 0.0, artU = 0.0;
    if (lenX > 0.0) {
      const Vec2 nU = etaX * (1.0 / lenX);
      const Primitive pl = face_primitive(li.q, li.plag, par);
      const Primitive pr = face_primitive(rj.q, rj.plag, par);
      alphaU = std::max(max_signal_speed(pl, par, nU), max_signal_speed(pr, par, nU));
      if (tc.cAlpha > 0.0)
        artU = tc.cAlpha * std::max(eos_sound_speed(pl.rho, pl.p, par),
                                    eos_sound_speed(pr.rho, pr.p, par));
    }
    if (tc.order >= 2) {
      const Vec2 half = st.halfSeg[d] * gOff;
      State acc{};
      for (int g = -1; g <= 1; g += 2) {
        const Vec2 xg = st.midST[d] + static_cast<double>(g) * half;
        const FaceState lg =
            limited_extrapolation(pred, dm, pm, par, tc, df.cOwn, df.tri, xg, dt);
        const FaceState rg =
            limited_extrapolation(pred, dm, pm, par, tc, df.cNbr, df.tri, xg, dt);
        const State fg = rusanov_flux(lg, rg, st.etaT[d], etaX, par, 0.0, 0.0);
        for (int s = 0; s < kNumVars; ++s) acc[s] += 0.5 * fg[s];
      }
      const double a = 0.5 * (alphaU + artU) * lenX;
      for (int s = 0; s < kNumVars; ++s) acc[s] -= a * (rj.q[s] - li.q[s]);
      faceFlux[d] = acc;
      faceJump[d] = path_jump(li.q, rj.q, etaX, par);
    } else {
      faceFlux[d] = rusanov_flux(li, rj, st.etaT[d], etaX, par, alphaU, artU);
      faceJump[d] = path_jump(f.q[df.cOwn], f.q[df.cNbr], etaX, par);
    }
  }

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int b = 0; b < nbf; ++b) {
    const int slot = st.nInterior + b;
    const int cell = st.boundaryFaceId[b];
    const auto& fc = pm.face[cell];
    const Vec2 etaX = st.etaX[slot];
    const double lenX = norm(etaX);
    const Vec2 nU = (lenX > 0.0) ? etaX * (1.0 / lenX) : Vec2{1.0, 0.0};
    const auto bcIt = bcs.find(fc.tag);
    const BoundaryCondition bc = (bcIt != bcs.end()) ? bcIt->second : BoundaryCondition{};

    const FaceState li =
        limited_extrapolation(pred, dm, pm, par, tc, cell, fc.tL, st.midST[slot], dt);
    FaceState gj;
    gj.q = ghost_state(li.q, li.plag, bc, nU, par, gj.plag);
    double alphaU = 0.0, artU = 0.0;
    if (lenX > 0.0) {
      const Primitive pl = face_primitive(li.q, li.plag, par);
      const Primitive pr = face_primitive(gj.q, gj.plag, par);
      alphaU = std::max(max_signal_speed(pl, par, nU), max_signal_speed(pr, par, nU));
      if (tc.cAlpha > 0.0)
        artU = tc.cAlpha * std::max(eos_sound_speed(pl.rho, pl.p, par),
                                    eos_sound_speed(pr.rho, pr.p, par));
    }
    if (tc.order >= 2) {
      const Vec2 half = st.halfSeg[slot] * gOff;
      State acc{};
      for (int g = -1; g <= 1; g += 2) {
        const Vec2 xg = st.midST[slot] + static_cast<double>(g) * half;
        const FaceState lg =
            limited_extrapolation(pred, dm, pm, par, tc, cell, fc.tL, xg, dt);
        FaceState gg;
        gg.q = ghost_state(lg.q, lg.plag, bc, nU, par, gg.plag);
        const State fg = rusanov_flux(lg, gg, st.etaT[slot], etaX, par, 0.0, 0.0);
        for (int s = 0; s < kNumVars; ++s) acc[s] += 0.5 * fg[s];
      }
      const double a = 0.5 * (alphaU + artU) * lenX;
      for (int s = 0; s < kNumVars; ++s) acc[s] -= a * (gj.q[s] - li.q[s]);
      faceFlux[slot] = acc;
      faceJump[slot] = path_jump(li.q, gj.q, etaX, par);
    } else {
      faceFlux[slot] = rusanov_flux(li, gj, st.etaT[slot], etaX, par, alphaU, artU);
      double gp;
      const State gcell = ghost_state(f.q[cell], f.plag[cell], bc, nU, par, gp);
      faceJump[slot] = path_jump(f.q[cell], gcell, etaX, par);
    }
  }

  // map from primal face id to its boundary slot
  std::vector<int> bSlot(nc, -1);
  for (int b = 0; b < nbf; ++b) bSlot[st.boundaryFaceId[b]] = st.nInterior + b;

  f.qStar.resize(nc);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int c = 0; c < nc; ++c) {
    State acc{};
    for (int s = 0; s < kNumVars; ++s) acc[s] = st.areaOld[c] * f.q[c][s];
    for (const auto& ref : dm.cellFaces[c]) {
      const int slot = ref.boundary ? bSlot[ref.id] : ref.id;
      for (int s = 0; s < kNumVars; ++s)
        acc[s] -= ref.sign * faceFlux[slot][s] + faceJump[slot][s];
    }

    // smooth interior NCP with the half-evolved state and its weighted gradient
    const auto& fc = pm.face[c];
    State gx{}, gy{};
    if (tc.order >= 2) {
      if (fc.tR >= 0) {
        const double w0 = dm.genArea[c][0] / dm.area[c];
        const double w1 = dm.genArea[c][1] / dm.area[c];
        for (int s = 0; s < kNumVars; ++s) {
          gx[s] = w0 * pred.gradHX[fc.tL][s] + w1 * pred.gradHX[fc.tR][s];
          gy[s] = w0 * pred.gradHY[fc.tL][s] + w1 * pred.gradHY[fc.tR][s];
        }
      } else {
        gx = pred.gradHX[fc.tL];
        gy = pred.gradHY[fc.tL];
      }
    } else {
      // first order: t^n gradients of the cell averages
      // (kept zero: the jump terms carry the whole NCP at first order)
    }
    const Primitive ph = face_primitive(pred.half[c], f.plag[c], par);
    const State bq = ncp_product(ph, par, gx, gy);
    for (int s = 0; s < kNumVars; ++s) acc[s] -= st.volST[c] * bq[s];

    // gravity with half-evolved density and momentum
    acc[kMom + 0] += st.volST[c] * pred.half[c][kRho] * par.g.x;
    acc[kMom + 1] += st.volST[c] * pred.half[c][kRho] * par.g.y;
    acc[kE] += st.volST[c] *
               (par.g.x * pred.half[c][kMom + 0] + par.g.y * pred.half[c][kMom + 1]);

    const double inv = 1.0 / st.areaNew[c];
    for (int s = 0; s < kNumVars; ++s) f.qStar[c][s] = acc[s] * inv;
  }

  for (int c = 0; c < nc; ++c)
    if (!(f.qStar[c][kRho] > 0.0))
      throw InvalidState("transport_step: non-positive density " +
                         std::to_string(f.qStar[c][kRho]) + " at cell " + std::to_string(c));
}

}  // namespace gpr

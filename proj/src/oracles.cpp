#include "gpr/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace gpr {
namespace oracle {

namespace {

// Toro's pressure function for one side
void pressure_fn(double p, double rho, double pk, double gamma, double& f, double& df) {
  if (p > pk) {  // shock
    const double ak = 2.0 / ((gamma + 1.0) * rho);
    const double bk = (gamma - 1.0) / (gamma + 1.0) * pk;
    const double sq = std::sqrt(ak / (p + bk));
    f = (p - pk) * sq;
    df = sq * (1.0 - 0.5 * (p - pk) / (p + bk));
  } else {  // rarefaction
    const double ck = std::sqrt(gamma * pk / rho);
    f = 2.0 * ck / (gamma - 1.0) * (std::pow(p / pk, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
    df = 1.0 / (rho * ck) * std::pow(p / pk, -(gamma + 1.0) / (2.0 * gamma));
  }
}

}  // namespace

StarRegion euler_star(const RiemannState& l, const RiemannState& r, double gamma) {
  if (l.rho <= 0 || r.rho <= 0 || l.p <= 0 || r.p <= 0)
    throw std::domain_error("euler_star: states must have positive density and pressure");
  const double cl = std::sqrt(gamma * l.p / l.rho), cr = std::sqrt(gamma * r.p / r.rho);
  const double du = r.un - l.un;
  if (2.0 * (cl + cr) / (gamma - 1.0) <= du)
    throw std::domain_error("euler_star: initial states generate vacuum");

  // Toro's two-rarefaction guess, clipped away from zero
  double p = std::pow((cl + cr - 0.5 * (gamma - 1.0) * du) /
                          (cl / std::pow(l.p, (gamma - 1.0) / (2.0 * gamma)) +
                           cr / std::pow(r.p, (gamma - 1.0) / (2.0 * gamma))),
                      2.0 * gamma / (gamma - 1.0));
  p = std::max(p, 1e-14 * std::max(l.p, r.p));

  StarRegion s;
  for (int it = 0; it < 200; ++it) {
    double fl, dfl, fr, dfr;
    pressure_fn(p, l.rho, l.p, gamma, fl, dfl);
    pressure_fn(p, r.rho, r.p, gamma, fr, dfr);
    const double g = fl + fr + du;
    const double dp = g / (dfl + dfr);
    double pn = p - dp;
    if (pn <= 0.0) pn = 0.5 * p;
    s.iterations = it + 1;
    if (std::abs(pn - p) <= 1e-12 * std::max(1.0, 0.5 * (pn + p))) {
      p = pn;
      break;
    }
    p = pn;
  }
  s.p = p;
  double fl, dfl, fr, dfr;
  pressure_fn(p, l.rho, l.p, gamma, fl, dfl);
  pressure_fn(p, r.rho, r.p, gamma, fr, dfr);
  s.u = 0.5 * (l.un + r.un) + 0.5 * (fr - fl);
  return s;
}

RiemannState euler_exact(const RiemannState& l, const RiemannState& r, double gamma, double xi) {
  const StarRegion s = euler_star(l, r, gamma);
  const double cl = std::sqrt(gamma * l.p / l.rho), cr = std::sqrt(gamma * r.p / r.rho);
  const double g1 = (gamma - 1.0) / (2.0 * gamma), g2 = (gamma + 1.0) / (2.0 * gamma);
  const double g3 = 2.0 / (gamma + 1.0), g4 = (gamma - 1.0) / (gamma + 1.0);
  RiemannState out;
  if (xi <= s.u) {
    out.ut = l.ut;
    if (s.p > l.p) {  // left shock
      const double sl = l.un - cl * std::sqrt(g2 * s.p / l.p + g1);
      if (xi <= sl) return l;
      out.rho = l.rho * (s.p / l.p + g4) / (g4 * s.p / l.p + 1.0);
      out.un = s.u;
      out.p = s.p;
    } else {  // left rarefaction
      const double cstar = cl * std::pow(s.p / l.p, g1);
      if (xi <= l.un - cl) return l;
      if (xi >= s.u - cstar) {
        out.rho = l.rho * std::pow(s.p / l.p, 1.0 / gamma);
        out.un = s.u;
        out.p = s.p;
      } else {  // fan
        const double c = g3 * (cl + 0.5 * (gamma - 1.0) * (l.un - xi));
        out.un = g3 * (cl + 0.5 * (gamma - 1.0) * l.un + xi);
        out.rho = l.rho * std::pow(c / cl, 2.0 / (gamma - 1.0));
        out.p = l.p * std::pow(c / cl, 2.0 * gamma / (gamma - 1.0));
      }
    }
  } else {
    out.ut = r.ut;
    if (s.p > r.p) {  // right shock
      const double sr = r.un + cr * std::sqrt(g2 * s.p / r.p + g1);
      if (xi >= sr) return r;
      out.rho = r.rho * (s.p / r.p + g4) / (g4 * s.p / r.p + 1.0);
      out.un = s.u;
      out.p = s.p;
    } else {  // right rarefaction
      const double cstar = cr * std::pow(s.p / r.p, g1);
      if (xi >= r.un + cr) return r;
      if (xi <= s.u + cstar) {
        out.rho = r.rho * std::pow(s.p / r.p, 1.0 / gamma);
        out.un = s.u;
        out.p = s.p;
      } else {
        const double c = g3 * (cr - 0.5 * (gamma - 1.0) * (r.un - xi));
        out.un = g3 * (-cr + 0.5 * (gamma - 1.0) * r.un + xi);
        out.rho = r.rho * std::pow(c / cr, 2.0 / (gamma - 1.0));
        out.p = r.p * std::pow(c / cr, 2.0 * gamma / (gamma - 1.0));
      }
    }
  }
  return out;
}

double stokes_first(double x, double t, double mu) {
  if (t <= 0.0 || mu <= 0.0) throw std::domain_error("stokes_first: t and mu must be positive");
  return 0.1 * std::erf(x / (2.0 * std::sqrt(mu * t)));
}

// ---------------------------------------------------------------------------
// 1D references

namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return (std::abs(a) < std::abs(b)) ? a : b;
}

// --- 3-variable Euler (planar or radial with geometric source) ---

struct Euler1d {
  double gamma;
  int dGeo;  // 0 planar, 1 cylindrical (2D radial)

  std::array<double, 3> flux(const std::array<double, 3>& q) const {
    const double u = q[1] / q[0];
    const double p = (gamma - 1.0) * (q[2] - 0.5 * q[1] * u);
    return {q[1], q[1] * u + p, (q[2] + p) * u};
  }
  std::array<double, 3> source(const std::array<double, 3>& q, double rr) const {
    if (dGeo == 0) return {0.0, 0.0, 0.0};
    const double u = q[1] / q[0];
    const double p = (gamma - 1.0) * (q[2] - 0.5 * q[1] * u);
    const double f = -static_cast<double>(dGeo) / rr;
    return {f * q[1], f * q[1] * u, f * (q[2] + p) * u};
  }
  double speed(const std::array<double, 3>& q) const {
    const double u = q[1] / q[0];
    const double p = (gamma - 1.0) * (q[2] - 0.5 * q[1] * u);
    return std::abs(u) + std::sqrt(gamma * std::max(p, 1e-300) / q[0]);
  }
};

}  // namespace

Profile1d reference_1d(const Case1d& c, System1d sys, int n) {
  if (n < 100) throw std::domain_error("reference_1d: need n >= 100");
  Profile1d prof;
  const double len = c.x1 - c.x0;
  const double dx = len / n;
  prof.x.resize(n);
  for (int i = 0; i < n; ++i) prof.x[i] = c.x0 + (i + 0.5) * dx;

  if (sys == System1d::euler || sys == System1d::euler_radial) {
    Euler1d mdl{c.par.gamma, sys == System1d::euler_radial ? 1 : 0};
    using Q3 = std::array<double, 3>;
    auto prim2cons = [&](double rho, double u, double p) {
      return Q3{rho, rho * u, p / (mdl.gamma - 1.0) + 0.5 * rho * u * u};
    };
    std::vector<Q3> q(n), qn(n), slope(n);
    for (int i = 0; i < n; ++i)
      q[i] = (prof.x[i] <= c.xd) ? prim2cons(c.rhoL, c.u1L, c.pL)
                                 : prim2cons(c.rhoR, c.u1R, c.pR);
    double t = 0.0;
    while (t < c.time) {
      double amax = 1e-300;
      for (int i = 0; i < n; ++i) amax = std::max(amax, mdl.speed(q[i]));
      double dt = c.cflOracle * dx / amax;
      dt = std::min(dt, c.time - t);

      for (int i = 0; i < n; ++i) {
        const Q3& ql = q[std::max(i - 1, 0)];
        const Q3& qr = q[std::min(i + 1, n - 1)];
        for (int k = 0; k < 3; ++k) slope[i][k] = minmod(q[i][k] - ql[k], qr[k] - q[i][k]);
      }
      // MUSCL-Hancock: half-step evolved boundary values, source in the predictor
      std::vector<Q3> qm(n), qp(n);
      for (int i = 0; i < n; ++i) {
        Q3 lft, rgt;
        for (int k = 0; k < 3; ++k) {
          lft[k] = q[i][k] - 0.5 * slope[i][k];
          rgt[k] = q[i][k] + 0.5 * slope[i][k];
        }
        const Q3 fl = mdl.flux(lft), fr = mdl.flux(rgt);
        const Q3 src = mdl.source(q[i], std::max(std::abs(prof.x[i]), 0.5 * dx));
        for (int k = 0; k < 3; ++k) {
          const double upd = -0.5 * dt / dx * (fr[k] - fl[k]) + 0.5 * dt * src[k];
          qm[i][k] = lft[k] + upd;
          qp[i][k] = rgt[k] + upd;
        }
      }
      for (int i = 0; i < n; ++i) qn[i] = q[i];
      for (int i = 0; i <= n; ++i) {
        const Q3& ql = (i == 0) ? qm[0] : qp[i - 1];
        const Q3& qr = (i == n) ? qp[n - 1] : qm[i];
        const Q3 fl = mdl.flux(ql), fr = mdl.flux(qr);
        const double a = std::max(mdl.speed(ql), mdl.speed(qr));
        Q3 fh;
        for (int k = 0; k < 3; ++k) fh[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * a * (qr[k] - ql[k]);
        if (i > 0)
          for (int k = 0; k < 3; ++k) qn[i - 1][k] -= dt / dx * fh[k];
        if (i < n)
          for (int k = 0; k < 3; ++k) qn[i][k] += dt / dx * fh[k];
      }
      for (int i = 0; i < n; ++i) {
        const Q3 src = mdl.source(q[i], std::max(std::abs(prof.x[i]), 0.5 * dx));
        for (int k = 0; k < 3; ++k) qn[i][k] += dt * src[k];
      }
      q = qn;
      t += dt;
    }
    prof.rho.resize(n);
    prof.u1.resize(n);
    prof.u2.assign(n, 0.0);
    prof.p.resize(n);
    for (int i = 0; i < n; ++i) {
      prof.rho[i] = q[i][0];
      prof.u1[i] = q[i][1] / q[i][0];
      prof.p[i] = (mdl.gamma - 1.0) * (q[i][2] - 0.5 * q[i][1] * prof.u1[i]);
    }
    return prof;
  }

  // --- full 1D GPR system, unsplit explicit TVD scheme ---
  const MaterialParams& par = c.par;
  auto makeState = [&](double rho, double u1, double u2, double p) {
    Primitive prim;
    prim.rho = rho;
    prim.u[0] = u1;
    prim.u[1] = u2;
    prim.p = p;
    prim.T = temperature(rho, p, par);
    return primitive_to_conserved(prim, par);
  };
  std::vector<State> q(n), qn(n), slope(n);
  for (int i = 0; i < n; ++i)
    q[i] = (prof.x[i] <= c.xd) ? makeState(c.rhoL, c.u1L, c.u2L, c.pL)
                               : makeState(c.rhoR, c.u1R, c.u2R, c.pR);

  const Vec2 ex{1.0, 0.0};
  auto fullFlux = [&](const State& s) {
    const Primitive prim = conserved_to_primitive(s, par);
    State f = transport_flux_dot_n(prim, prim.p, par, ex);
    // re-add the pressure-stage parts: E1 u + p u in the energy flux
    f[kE] += (eos_internal_energy(prim.rho, prim.p, par) + prim.p) * prim.u[0];
    return f;
  };
  auto fullSpeed = [&](const State& s) {
    const Primitive prim = conserved_to_primitive(s, par);
    const double c2 = par.gamma * std::max(prim.p + par.p_offset(), 0.0) / prim.rho +
                      4.0 / 3.0 * par.cs * par.cs +
                      2.0 * par.ch * par.ch * prim.T / (prim.rho * prim.rho * par.cv);
    double a = std::abs(prim.u[0]) + std::sqrt(c2);
    a = std::max(a, std::abs(prim.u[0]) + par.cA);
    a = std::max(a, std::abs(prim.u[0]) + par.cJ);
    return a;
  };
  auto bAt = [&](const State& s, const State& dq) {
    Primitive prim;
    prim.rho = s[kRho];
    for (int k = 0; k < 3; ++k) prim.u[k] = s[kMom + k] / s[kRho];
    return ncp_apply(prim, par, ex, dq);
  };

  double t = 0.0;
  while (t < c.time) {
    double amax = 1e-300;
    for (int i = 0; i < n; ++i) amax = std::max(amax, fullSpeed(q[i]));
    double dt = c.cflOracle * dx / amax;
    dt = std::min(dt, c.time - t);

    for (int i = 0; i < n; ++i) {
      const State& ql = q[std::max(i - 1, 0)];
      const State& qr = q[std::min(i + 1, n - 1)];
      for (int k = 0; k < kNumVars; ++k)
        slope[i][k] = minmod(q[i][k] - ql[k], qr[k] - q[i][k]);
    }
    std::vector<State> qm(n), qp(n);
    for (int i = 0; i < n; ++i) {
      State lft, rgt;
      for (int k = 0; k < kNumVars; ++k) {
        lft[k] = q[i][k] - 0.5 * slope[i][k];
        rgt[k] = q[i][k] + 0.5 * slope[i][k];
      }
      const State fl = fullFlux(lft), fr = fullFlux(rgt);
      State bb = bAt(q[i], slope[i]);
      for (int k = 0; k < kNumVars; ++k) {
        const double upd = -0.5 * dt / dx * (fr[k] - fl[k] + bb[k]);
        qm[i][k] = lft[k] + upd;
        qp[i][k] = rgt[k] + upd;
      }
    }
    for (int i = 0; i < n; ++i) qn[i] = q[i];
    for (int i = 0; i <= n; ++i) {
      const State& ql = (i == 0) ? qm[0] : qp[i - 1];
      const State& qr = (i == n) ? qp[n - 1] : qm[i];
      const State fl = fullFlux(ql), fr = fullFlux(qr);
      const double a = std::max(fullSpeed(ql), fullSpeed(qr));
      State fh;
      for (int k = 0; k < kNumVars; ++k)
        fh[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * a * (qr[k] - ql[k]);
      // path jump between the reconstructed face states; the smooth NCP part is
      // integrated over the cell with the limited slope
      State dj{};
      if (i > 0 && i < n) {
        State dq;
        for (int k = 0; k < kNumVars; ++k) dq[k] = qr[k] - ql[k];
        static const double gs[3] = {0.5 - std::sqrt(3.0 / 20.0), 0.5,
                                     0.5 + std::sqrt(3.0 / 20.0)};
        static const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
        for (int g = 0; g < 3; ++g) {
          State qs;
          for (int k = 0; k < kNumVars; ++k) qs[k] = ql[k] + gs[g] * dq[k];
          const State b = bAt(qs, dq);
          for (int k = 0; k < kNumVars; ++k) dj[k] += 0.5 * gw[g] * b[k];
        }
      }
      if (i > 0)
        for (int k = 0; k < kNumVars; ++k) qn[i - 1][k] -= dt / dx * (fh[k] + dj[k]);
      if (i < n)
        for (int k = 0; k < kNumVars; ++k) qn[i][k] += dt / dx * (fh[k] - dj[k]);
    }
    // interior NCP over the cell with the limited slope
    for (int i = 0; i < n; ++i) {
      const State bb = bAt(q[i], slope[i]);
      for (int k = 0; k < kNumVars; ++k) qn[i][k] -= dt / dx * bb[k];
    }
    q = qn;
    t += dt;
  }

  prof.rho.resize(n);
  prof.u1.resize(n);
  prof.u2.resize(n);
  prof.p.resize(n);
  prof.A11.resize(n);
  prof.A12.resize(n);
  prof.A21.resize(n);
  prof.A22.resize(n);
  prof.J1.resize(n);
  prof.T.resize(n);
  for (int i = 0; i < n; ++i) {
    const Primitive prim = conserved_to_primitive(q[i], par);
    prof.rho[i] = prim.rho;
    prof.u1[i] = prim.u[0];
    prof.u2[i] = prim.u[1];
    prof.p[i] = prim.p;
    prof.A11[i] = prim.A(0, 0);
    prof.A12[i] = prim.A(0, 1);
    prof.A21[i] = prim.A(1, 0);
    prof.A22[i] = prim.A(1, 1);
    prof.J1[i] = prim.J[0];
    prof.T[i] = prim.T;
  }
  return prof;
}

}  // namespace oracle
}  // namespace gpr

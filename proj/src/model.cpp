#include "gpr/model.hpp"

#include <cmath>

namespace gpr {

void MaterialParams::validate() const {
  if (gamma <= 1.0) throw std::domain_error("MaterialParams: gamma must exceed 1");
  if (cv <= 0.0) throw std::domain_error("MaterialParams: cv must be positive");
  if (rho0 <= 0.0) throw std::domain_error("MaterialParams: rho0 must be positive");
  if (cs < 0 || ch < 0 || cA < 0 || cJ < 0 || tau1 < 0 || tau2 < 0)
    throw std::domain_error("MaterialParams: wave speeds and relaxation times must be >= 0");
}

double tau1_from_mu(double mu, const MaterialParams& par) {
  if (par.cs == 0.0) return 1e30;
  return 6.0 * mu / (par.rho0 * par.cs * par.cs);
}

double tau2_from_kappa(double kappa, const MaterialParams& par) {
  if (par.ch == 0.0) return 1e30;
  return kappa / (par.rho0 * par.T0 * par.ch * par.ch);
}

double eos_internal_energy(double rho, double p, const MaterialParams& par) {
  if (rho <= 0.0) throw std::domain_error("eos_internal_energy: rho <= 0");
  return (p + par.p_offset()) / (par.gamma - 1.0);
}

double eos_pressure(double rho, double e1, const MaterialParams& par) {
  if (rho <= 0.0) throw std::domain_error("eos_pressure: rho <= 0");
  return (par.gamma - 1.0) * e1 - par.p_offset();
}

double enthalpy(double rho, double p, const MaterialParams& par) {
  if (rho <= 0.0) throw std::domain_error("enthalpy: rho <= 0");
  return par.gamma * (p + par.p_offset()) / (rho * (par.gamma - 1.0));
}

double temperature(double rho, double p, const MaterialParams& par) {
  if (rho <= 0.0) throw std::domain_error("temperature: rho <= 0");
  return (p + par.p_offset()) / (rho * par.cv * (par.gamma - 1.0));
}

double eos_sound_speed(double rho, double p, const MaterialParams& par) {
  const double pt = std::max(p + par.p_offset(), 0.0);
  return std::sqrt(par.gamma * pt / rho);
}

double pressure_floor(const MaterialParams& par, double p_scale) {
  return -par.p_offset() + 1e-12 * std::abs(p_scale);
}

EnergyParts energy_decompose(const Primitive& prim, const MaterialParams& par) {
  EnergyParts e;
  const double rho = prim.rho;
  e.e1 = eos_internal_energy(rho, prim.p, par);
  e.e2 = 0.5 * rho * norm2(prim.u);
  const Mat3 Gd = deviator(metric(prim.A));
  e.e3 = 0.25 * par.cs * par.cs * rho * ddot(Gd, Gd);
  e.e4 = 0.5 * par.ch * par.ch * rho * norm2(prim.J);
  const Mat3 Dd = deviator(metric(prim.phi));
  e.e5 = 0.25 * par.cs * par.cs * rho * ddot(Dd, Dd);
  e.e6 = 0.5 * par.ch * par.ch * rho * norm2(prim.psi);
  return e;
}

State primitive_to_conserved(const Primitive& prim, const MaterialParams& par) {
  State q{};
  q[kRho] = prim.rho;
  for (int i = 0; i < 3; ++i) q[kMom + i] = prim.rho * prim.u[i];
  for (int i = 0; i < 9; ++i) q[kA + i] = prim.A.m[i];
  for (int i = 0; i < 9; ++i) q[kPhi + i] = prim.phi.m[i];
  for (int i = 0; i < 3; ++i) q[kJ + i] = prim.J[i];
  for (int i = 0; i < 3; ++i) q[kPsi + i] = prim.psi[i];
  q[kE] = energy_decompose(prim, par).total();
  return q;
}

Primitive conserved_to_primitive(const State& q, const MaterialParams& par, int cell_id) {
  Primitive prim;
  prim.rho = q[kRho];
  if (prim.rho <= 0.0)
    throw InvalidState("conserved_to_primitive: non-positive density at cell " +
                       std::to_string(cell_id));
  const double inv_rho = 1.0 / prim.rho;
  for (int i = 0; i < 3; ++i) prim.u[i] = q[kMom + i] * inv_rho;
  for (int i = 0; i < 9; ++i) prim.A.m[i] = q[kA + i];
  for (int i = 0; i < 9; ++i) prim.phi.m[i] = q[kPhi + i];
  for (int i = 0; i < 3; ++i) prim.J[i] = q[kJ + i];
  for (int i = 0; i < 3; ++i) prim.psi[i] = q[kPsi + i];
  prim.p = 0.0;  // placeholder for the decomposition below
  EnergyParts e = energy_decompose(prim, par);
  const double e1 = q[kE] - e.meso();
  prim.p = eos_pressure(prim.rho, e1, par);
  if (prim.p < pressure_floor(par))
    throw InvalidState("conserved_to_primitive: pressure " + std::to_string(prim.p) +
                       " below floor at cell " + std::to_string(cell_id));
  prim.T = temperature(prim.rho, prim.p, par);
  return prim;
}

Mat3 shear_stress(double rho, const Mat3& A, const MaterialParams& par) {
  if (par.cs == 0.0) return Mat3{};
  const Mat3 G = metric(A);
  return rho * par.cs * par.cs * matmul(G, deviator(G));
}

void thermal_stress_and_heatflux(double rho, double T, const Vec3& J, const MaterialParams& par,
                                 Mat3& omega, Vec3& qflux) {
  omega = Mat3{};
  qflux = Vec3{};
  if (par.ch == 0.0) return;
  const double c = rho * par.ch * par.ch;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) omega(i, k) = c * J[i] * J[k];
  qflux = (c * T) * J;
}

void relaxation_rhs(const Mat3& A, const Vec3& J, double rho, double T,
                    const MaterialParams& par, Mat3& dA, Vec3& dJ) {
  const double dA_det = det(A);
  if (dA_det <= 0.0)
    throw InvalidState("relaxation_rhs: singular distortion, det(A) = " + std::to_string(dA_det));
  const Mat3 G = metric(A);
  dA = (-3.0 / par.tau1 * std::pow(dA_det, 5.0 / 3.0)) * matmul(A, deviator(G));
  // E_J/theta2 with the ch^2 factors cancelled; no thermal energy at ch = 0
  if (par.ch == 0.0)
    dJ = Vec3{};
  else
    dJ = (-T / (par.rho0 * par.T0 * par.tau2)) * J;
}

DualVariables dual_variables(const State& q, const MaterialParams& par) {
  const Primitive prim = conserved_to_primitive(q, par);
  DualVariables d;
  d.u = prim.u;
  d.T = prim.T;
  const double cs2 = par.cs * par.cs, ch2 = par.ch * par.ch;
  d.alpha = prim.rho * cs2 * matmul(prim.A, deviator(metric(prim.A)));
  d.gammaik = prim.rho * cs2 * matmul(prim.phi, deviator(metric(prim.phi)));
  d.beta = prim.rho * ch2 * prim.J;
  d.xi = prim.rho * ch2 * prim.psi;
  // dE/drho at fixed (m, A, phi, J, psi, rho*S): with e^(S/cv) = (p+p')/rho^gamma
  const EnergyParts e = energy_decompose(prim, par);
  const double S = par.cv * std::log((prim.p + par.p_offset()) / std::pow(prim.rho, par.gamma));
  d.r = (e.e1 * (par.gamma - S / par.cv) - e.e2 + e.e3 + e.e4 + e.e5 + e.e6) / prim.rho;
  return d;
}

RecState to_rec_state(const State& q, double plag, const MaterialParams& par, int cell_id) {
  const Primitive prim = conserved_to_primitive(q, par, cell_id);
  RecState v{};
  v[kRho] = prim.rho;
  for (int i = 0; i < 3; ++i) v[kMom + i] = prim.u[i];
  for (int i = 4; i < 28; ++i) v[i] = q[i];
  v[kPrimP] = prim.p;
  v[kPlag] = plag;
  return v;
}

Primitive rec_to_primitive(const RecState& v, const MaterialParams& par) {
  Primitive prim;
  prim.rho = v[kRho];
  for (int i = 0; i < 3; ++i) prim.u[i] = v[kMom + i];
  for (int i = 0; i < 9; ++i) prim.A.m[i] = v[kA + i];
  for (int i = 0; i < 9; ++i) prim.phi.m[i] = v[kPhi + i];
  for (int i = 0; i < 3; ++i) prim.J[i] = v[kJ + i];
  for (int i = 0; i < 3; ++i) prim.psi[i] = v[kPsi + i];
  prim.p = v[kPrimP];
  prim.T = temperature(prim.rho, prim.p, par);
  return prim;
}

State rec_to_conserved(const RecState& v, const MaterialParams& par) {
  const Primitive prim = rec_to_primitive(v, par);
  return primitive_to_conserved(prim, par);
}

State transport_flux_dot_n(const Primitive& prim, double plag, const MaterialParams& par,
                           const Vec2& n) {
  State f{};
  const double rho = prim.rho;
  const double un = prim.u[0] * n.x + prim.u[1] * n.y;
  const double Tlag = temperature(rho, plag, par);

  f[kRho] = rho * un;

  const Mat3 sig = shear_stress(rho, prim.A, par);
  Mat3 omega;
  Vec3 qflux;
  thermal_stress_and_heatflux(rho, Tlag, prim.J, par, omega, qflux);

  const double nn[3] = {n.x, n.y, 0.0};
  for (int i = 0; i < 3; ++i) {
    double s = rho * prim.u[i] * un + plag * nn[i];
    for (int k = 0; k < 2; ++k) s += (sig(i, k) + omega(i, k)) * nn[k];
    f[kMom + i] = s;
  }

  const Vec3 Au = matvec(prim.A, prim.u);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 2; ++k) f[kA + 3 * i + k] = Au[i] * nn[k];

  const double Ju = dot(prim.J, prim.u);
  for (int k = 0; k < 2; ++k) f[kJ + k] = (Ju + Tlag) * nn[k];

  // energy flux carries only the mesoscopic parts; E1 and p.u belong to the pressure stage
  Primitive pe = prim;
  pe.p = plag;  // e1 not used below
  const EnergyParts e = energy_decompose(pe, par);
  double fe = e.meso() * un + qflux[0] * n.x + qflux[1] * n.y;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 2; ++k) fe += prim.u[i] * (sig(i, k) + omega(i, k)) * nn[k];
  f[kE] = fe;
  return f;
}

State spacetime_flux(const RecState& v, const State& q, const MaterialParams& par, double eta_t,
                     const Vec2& eta_x) {
  const Primitive prim = rec_to_primitive(v, par);
  State f = transport_flux_dot_n(prim, v[kPlag], par, eta_x);
  for (int c = 0; c < kNumVars; ++c) f[c] += q[c] * eta_t;
  return f;
}

State ncp_apply(const Primitive& prim, const MaterialParams& par, const Vec2& n, const State& dq) {
  State out{};
  const double un = prim.u[0] * n.x + prim.u[1] * n.y;
  const double nn[3] = {n.x, n.y, 0.0};

  // A_ik: (u.n) dA_ik - u_j dA_ij n_k + cA eps_ijl n_j dphi_lk
  for (int i = 0; i < 3; ++i) {
    double udA = 0.0;
    for (int j = 0; j < 3; ++j) udA += prim.u[j] * dq[kA + 3 * i + j];
    for (int k = 0; k < 3; ++k) {
      double s = un * dq[kA + 3 * i + k] - udA * nn[k];
      if (par.cA != 0.0) {
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 3; ++l) {
            const double eps = levi_civita(i, j, l);
            if (eps != 0.0) s += par.cA * eps * nn[j] * dq[kPhi + 3 * l + k];
          }
      }
      out[kA + 3 * i + k] = s;
    }
  }

  // phi_ik: (u.n) dphi_ik - cA eps_ijl n_j dA_lk
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      double s = un * dq[kPhi + 3 * i + k];
      if (par.cA != 0.0) {
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 3; ++l) {
            const double eps = levi_civita(i, j, l);
            if (eps != 0.0) s -= par.cA * eps * nn[j] * dq[kA + 3 * l + k];
          }
      }
      out[kPhi + 3 * i + k] = s;
    }

  // J_k: (u.n) dJ_k - (u.dJ) n_k + cJ eps_kjl n_j dpsi_l
  double udJ = 0.0;
  for (int j = 0; j < 3; ++j) udJ += prim.u[j] * dq[kJ + j];
  for (int k = 0; k < 3; ++k) {
    double s = un * dq[kJ + k] - udJ * nn[k];
    if (par.cJ != 0.0) {
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 3; ++l) {
          const double eps = levi_civita(k, j, l);
          if (eps != 0.0) s += par.cJ * eps * nn[j] * dq[kPsi + l];
        }
    }
    out[kJ + k] = s;
  }

  // psi_k: (u.n) dpsi_k - cJ eps_kjl n_j dJ_l
  for (int k = 0; k < 3; ++k) {
    double s = un * dq[kPsi + k];
    if (par.cJ != 0.0) {
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 3; ++l) {
          const double eps = levi_civita(k, j, l);
          if (eps != 0.0) s -= par.cJ * eps * nn[j] * dq[kJ + l];
        }
    }
    out[kPsi + k] = s;
  }
  return out;
}

State ncp_product(const Primitive& prim, const MaterialParams& par, const State& dqdx,
                  const State& dqdy) {
  State bx = ncp_apply(prim, par, Vec2{1.0, 0.0}, dqdx);
  const State by = ncp_apply(prim, par, Vec2{0.0, 1.0}, dqdy);
  for (int c = 0; c < kNumVars; ++c) bx[c] += by[c];
  return bx;
}

namespace {

// gradient bundle of one reconstruction-state direction
struct RecGrad {
  double rho;
  Vec3 u;
  Mat3 A, phi;
  Vec3 J, psi;
  double plag;
};

RecGrad unpack(const RecState& d) {
  RecGrad g;
  g.rho = d[kRho];
  for (int i = 0; i < 3; ++i) g.u[i] = d[kMom + i];
  for (int i = 0; i < 9; ++i) g.A.m[i] = d[kA + i];
  for (int i = 0; i < 9; ++i) g.phi.m[i] = d[kPhi + i];
  for (int i = 0; i < 3; ++i) g.J[i] = d[kJ + i];
  for (int i = 0; i < 3; ++i) g.psi[i] = d[kPsi + i];
  g.plag = d[kPlag];
  return g;
}

}  // namespace

State transport_time_derivative(const RecState& v, const RecState& dvdx, const RecState& dvdy,
                                const MaterialParams& par) {
  const Primitive prim = rec_to_primitive(v, par);
  const double rho = prim.rho;
  const double cs2 = par.cs * par.cs, ch2 = par.ch * par.ch;
  const RecGrad gr[2] = {unpack(dvdx), unpack(dvdy)};

  const double Tlag = temperature(rho, v[kPlag], par);
  const Mat3 G = metric(prim.A);
  const Mat3 Gd = deviator(G);
  const Mat3 D = metric(prim.phi);
  const Mat3 Dd = deviator(D);
  const Mat3 sig = shear_stress(rho, prim.A, par);
  Mat3 omega;
  Vec3 qflux;
  thermal_stress_and_heatflux(rho, Tlag, prim.J, par, omega, qflux);

  // per-direction derivatives of sigma+omega, T and the mesoscopic energy sum
  Mat3 dso[2];
  double dT[2], dEsum[2];
  const double esum = 0.5 * rho * norm2(prim.u) + 0.25 * cs2 * rho * ddot(Gd, Gd) +
                      0.5 * ch2 * rho * norm2(prim.J) + 0.25 * cs2 * rho * ddot(Dd, Dd) +
                      0.5 * ch2 * rho * norm2(prim.psi);
  for (int d = 0; d < 2; ++d) {
    const RecGrad& g = gr[d];
    const Mat3 dG = matmul(transpose(g.A), prim.A) + matmul(transpose(prim.A), g.A);
    const Mat3 dD = matmul(transpose(g.phi), prim.phi) + matmul(transpose(prim.phi), g.phi);
    dso[d] = cs2 * (g.rho * matmul(G, Gd) + rho * (matmul(dG, Gd) + matmul(G, deviator(dG))));
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        dso[d](i, k) += ch2 * (g.rho * prim.J[i] * prim.J[k] + rho * g.J[i] * prim.J[k] +
                               rho * prim.J[i] * g.J[k]);
    dT[d] = g.plag / (rho * par.cv * (par.gamma - 1.0)) - Tlag * g.rho / rho;
    dEsum[d] = 0.5 * g.rho * norm2(prim.u) + rho * dot(prim.u, g.u) +
               cs2 * (0.25 * g.rho * ddot(Gd, Gd) + 0.5 * rho * ddot(Gd, dG)) +
               0.5 * ch2 * g.rho * norm2(prim.J) + rho * ch2 * dot(prim.J, g.J) +
               cs2 * (0.25 * g.rho * ddot(Dd, Dd) + 0.5 * rho * ddot(Dd, dD)) +
               0.5 * ch2 * g.rho * norm2(prim.psi) + rho * ch2 * dot(prim.psi, g.psi);
  }

  State div{};
  // mass
  for (int d = 0; d < 2; ++d) div[kRho] += gr[d].rho * prim.u[d] + rho * gr[d].u[d];
  // momentum
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int d = 0; d < 2; ++d)
      s += gr[d].rho * prim.u[i] * prim.u[d] + rho * gr[d].u[i] * prim.u[d] +
           rho * prim.u[i] * gr[d].u[d] + dso[d](i, d);
    if (i < 2) s += gr[i].plag;
    div[kMom + i] = s;
  }
  // A_ik: flux only in the column direction k
  const Vec3 Au = matvec(prim.A, prim.u);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 2; ++k) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) s += gr[k].A(i, j) * prim.u[j] + prim.A(i, j) * gr[k].u[j];
      (void)Au;
      div[kA + 3 * i + k] = s;
    }
  // J_k
  for (int k = 0; k < 2; ++k)
    div[kJ + k] = dot(gr[k].J, prim.u) + dot(prim.J, gr[k].u) + dT[k];
  // energy
  {
    double s = 0.0;
    for (int d = 0; d < 2; ++d) {
      s += dEsum[d] * prim.u[d] + esum * gr[d].u[d];
      for (int i = 0; i < 3; ++i)
        s += gr[d].u[i] * (sig(i, d) + omega(i, d)) + prim.u[i] * dso[d](i, d);
      // heat flux q_d = rho ch^2 Tlag J_d
      s += ch2 * (gr[d].rho * Tlag * prim.J[d] + rho * dT[d] * prim.J[d] +
                  rho * Tlag * gr[d].J[d]);
    }
    div[kE] = s;
  }

  // non-conservative products, reusing the conserved-slot layout of the gradients
  State gx{}, gy{};
  for (int i = 4; i < 28; ++i) {
    gx[i] = dvdx[i];
    gy[i] = dvdy[i];
  }
  const State bq = ncp_product(prim, par, gx, gy);

  State tdot{};
  for (int c = 0; c < kNumVars; ++c) tdot[c] = -(div[c] + bq[c]);
  // gravity belongs to the transport subsystem
  tdot[kMom + 0] += rho * par.g.x;
  tdot[kMom + 1] += rho * par.g.y;
  tdot[kE] += rho * (par.g.x * prim.u[0] + par.g.y * prim.u[1]);
  return tdot;
}

double max_signal_speed(const Primitive& prim, const MaterialParams& par, const Vec2& n_unit,
                        bool include_eos) {
  if (prim.rho <= 0.0) throw InvalidState("max_signal_speed: rho <= 0");
  const double un = std::abs(prim.u[0] * n_unit.x + prim.u[1] * n_unit.y);
  double c2 = 4.0 / 3.0 * par.cs * par.cs +
              2.0 * par.ch * par.ch * prim.T / (prim.rho * prim.rho * par.cv);
  if (include_eos) {
    const double ce = eos_sound_speed(prim.rho, prim.p, par);
    c2 += ce * ce;
  }
  const double c = std::sqrt(std::max(c2, 0.0));
  double a = un + c;
  a = std::max(a, un + par.cA);
  a = std::max(a, un + par.cJ);
  return a;
}

}  // namespace gpr

#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "gpr/tensor.hpp"

namespace gpr {

enum class Eos { ideal, stiffened };

// All model constants. cp = gamma*cv is kept consistent by set_gamma_cv().
struct MaterialParams {
  double gamma = 1.4;
  double cv = 2.5;
  double cp = 3.5;
  double cs = 0.0;    // shear wave speed
  double ch = 0.0;    // thermal wave speed
  double tau1 = 1e20; // shear relaxation time
  double tau2 = 1e20; // thermal relaxation time
  double rho0 = 1.0;
  double p0 = 0.0;
  double c0 = 0.0;    // adiabatic sound speed (stiffened EOS)
  double cA = 0.0;    // GLM cleaning speed, distortion
  double cJ = 0.0;    // GLM cleaning speed, thermal impulse
  Vec2 g{0.0, 0.0};
  double T0 = 1.0;
  Eos eos = Eos::ideal;

  void set_gamma_cv(double gam, double cvv) {
    gamma = gam;
    cv = cvv;
    cp = gam * cvv;
  }
  // stiffened-gas pressure offset p0' = (rho0 c0^2 - gamma p0)/gamma; zero for ideal
  double p_offset() const {
    if (eos == Eos::ideal) return 0.0;
    return (rho0 * c0 * c0 - gamma * p0) / gamma;
  }
  void validate() const;
};

// fluid-limit identities mu = 1/6 rho0 cs^2 tau1, kappa = rho0 T0 ch^2 tau2
double tau1_from_mu(double mu, const MaterialParams& par);
double tau2_from_kappa(double kappa, const MaterialParams& par);

// conserved state layout
inline constexpr int kRho = 0;
inline constexpr int kMom = 1;  // 1..3
inline constexpr int kA = 4;    // 4..12 row-major
inline constexpr int kPhi = 13; // 13..21 row-major
inline constexpr int kJ = 22;   // 22..24
inline constexpr int kPsi = 25; // 25..27
inline constexpr int kE = 28;
inline constexpr int kNumVars = 29;

using State = std::array<double, kNumVars>;

// reconstruction vector: primitive slots (rho,u,A,phi,J,psi,p) plus the lagged
// vertex pressure carried as an extra slot
inline constexpr int kPrimP = 28;
inline constexpr int kPlag = 29;
inline constexpr int kNumRec = 30;
using RecState = std::array<double, kNumRec>;

struct Primitive {
  double rho = 1.0;
  Vec3 u;
  Mat3 A = Mat3::identity();
  Mat3 phi;
  Vec3 J;
  Vec3 psi;
  double p = 1.0;
  double T = 1.0;
};

struct EnergyParts {
  double e1 = 0, e2 = 0, e3 = 0, e4 = 0, e5 = 0, e6 = 0;
  double total() const { return e1 + e2 + e3 + e4 + e5 + e6; }
  double meso() const { return e2 + e3 + e4 + e5 + e6; }  // everything but internal
};

// thermodynamic duals dE/dq; used by property tests
struct DualVariables {
  double r = 0;
  Vec3 u;
  Mat3 alpha;
  Mat3 gammaik;
  Vec3 beta;
  Vec3 xi;
  double T = 0;
};

struct InvalidState : std::runtime_error {
  explicit InvalidState(const std::string& msg) : std::runtime_error(msg) {}
};

// EOS
double eos_internal_energy(double rho, double p, const MaterialParams& par);
double eos_pressure(double rho, double e1, const MaterialParams& par);
double enthalpy(double rho, double p, const MaterialParams& par);
double temperature(double rho, double p, const MaterialParams& par);
double eos_sound_speed(double rho, double p, const MaterialParams& par);
// lowest admissible pressure (below it conserved_to_primitive throws)
double pressure_floor(const MaterialParams& par, double p_scale = 1.0);

EnergyParts energy_decompose(const Primitive& prim, const MaterialParams& par);

State primitive_to_conserved(const Primitive& prim, const MaterialParams& par);
Primitive conserved_to_primitive(const State& q, const MaterialParams& par, int cell_id = -1);

// sigma_ik = rho cs^2 G_ij Gdev_jk
Mat3 shear_stress(double rho, const Mat3& A, const MaterialParams& par);
// omega_ik = rho ch^2 J_i J_k, q_k = rho ch^2 T J_k
void thermal_stress_and_heatflux(double rho, double T, const Vec3& J, const MaterialParams& par,
                                 Mat3& omega, Vec3& qflux);

// stiff algebraic sources: dA = -E_A/theta1, dJ = -E_J/theta2
void relaxation_rhs(const Mat3& A, const Vec3& J, double rho, double T,
                    const MaterialParams& par, Mat3& dA, Vec3& dJ);

DualVariables dual_variables(const State& q, const MaterialParams& par);

// conversions between State and RecState (p from energy inversion; plag passed through)
RecState to_rec_state(const State& q, double plag, const MaterialParams& par, int cell_id = -1);
State rec_to_conserved(const RecState& v, const MaterialParams& par);
Primitive rec_to_primitive(const RecState& v, const MaterialParams& par);

// transport-subsystem flux F(Q).n for spatial normal n (pressure-stage terms excluded;
// the momentum flux carries the lagged pressure plag, the J flux the lagged temperature)
State transport_flux_dot_n(const Primitive& prim, double plag, const MaterialParams& par,
                           const Vec2& n);

// space-time flux (Q, F(Q)).eta with eta = (eta_t, eta_x, eta_y)
State spacetime_flux(const RecState& v, const State& q, const MaterialParams& par, double eta_t,
                     const Vec2& eta_x);

// non-conservative product B(Q) contracted with direction n applied to an increment dq;
// serves both the interior term (n = unit axis, dq = gradient) and the segment-path jump
State ncp_apply(const Primitive& prim, const MaterialParams& par, const Vec2& n, const State& dq);

// B(Q).grad Q for per-direction gradients
State ncp_product(const Primitive& prim, const MaterialParams& par, const State& dqdx,
                  const State& dqdy);

// quasilinear transport divergence: d/dt Q = -(div F + B.grad Q) + gravity sources,
// evaluated from a state and its reconstruction-space gradients
State transport_time_derivative(const RecState& v, const RecState& dvdx, const RecState& dvdy,
                                const MaterialParams& par);

// eq. eigenvalue bound c = sqrt(4/3 cs^2 + 2 ch^2 T/(rho^2 cv)); returns
// max{|u.n| +- c, |u.n| +- cA, |u.n| +- cJ}, optionally widened by the EOS sound speed
double max_signal_speed(const Primitive& prim, const MaterialParams& par, const Vec2& n_unit,
                        bool include_eos = false);

}  // namespace gpr

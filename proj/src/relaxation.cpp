#include "gpr/relaxation.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gpr {

namespace {

// The distortion source dA/dt = -(3/tau1) det(A)^{5/3} A dev(A^T A) factors through
// the polar decomposition: the metric G = A^T A evolves as dG/dt = -k (GdevG + GGdev),
// a polynomial in G, so the eigenframe of G is constant along the flow and only the
// eigenvalues move. In w_i = ln g_i the system is
//   dw_i/dt = -2 k(w) (e^{w_i} - gbar),   k = (3/tau1) exp(5/6 sum w),
// integrated here with the two-stage stiffly accurate L-stable SDIRK scheme and a
// 3-dimensional Newton per stage. A is rebuilt as A V diag(sqrt(g/g0)) V^T, which
// reproduces the exact A-flow structure (rotation factor and det(A) invariant).

// cyclic Jacobi eigensolver for a symmetric 3x3 matrix
void eig_sym3(const Mat3& m, double w[3], Mat3& V) {
  Mat3 a = m;
  V = Mat3::identity();
  for (int sweep = 0; sweep < 32; ++sweep) {
    double off = std::abs(a(0, 1)) + std::abs(a(0, 2)) + std::abs(a(1, 2));
    if (off < 1e-300) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = ((theta >= 0) ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        Mat3 r = Mat3::identity();
        r(p, p) = c;
        r(q, q) = c;
        r(p, q) = s;
        r(q, p) = -s;
        a = matmul(transpose(r), matmul(a, r));
        V = matmul(V, r);
      }
  }
  for (int i = 0; i < 3; ++i) w[i] = a(i, i);
}

struct LogEigOde {
  double kappa = 0.0;  // 3/tau1

  void eval(const double* w, double* f) const {
    const double g0 = std::exp(w[0]), g1 = std::exp(w[1]), g2 = std::exp(w[2]);
    const double gbar = (g0 + g1 + g2) / 3.0;
    const double k = kappa * std::exp(5.0 / 6.0 * (w[0] + w[1] + w[2]));
    f[0] = -2.0 * k * (g0 - gbar);
    f[1] = -2.0 * k * (g1 - gbar);
    f[2] = -2.0 * k * (g2 - gbar);
  }
  void jacobian(const double* w, double jac[3][3]) const {
    const double g[3] = {std::exp(w[0]), std::exp(w[1]), std::exp(w[2])};
    const double gbar = (g[0] + g[1] + g[2]) / 3.0;
    const double k = kappa * std::exp(5.0 / 6.0 * (w[0] + w[1] + w[2]));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        jac[i][j] = -2.0 * (5.0 / 6.0) * k * (g[i] - gbar) -
                    2.0 * k * ((i == j ? g[i] : 0.0) - g[j] / 3.0);
      }
  }
};

bool lu_solve3(double a[3][3], double* b) {
  for (int col = 0; col < 3; ++col) {
    int best = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
    if (a[best][col] == 0.0) return false;
    if (best != col) {
      for (int k = 0; k < 3; ++k) std::swap(a[col][k], a[best][k]);
      std::swap(b[col], b[best]);
    }
    const double inv = 1.0 / a[col][col];
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[r][col] * inv;
      for (int k = col; k < 3; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < 3; ++k) s -= a[r][k] * b[k];
    b[r] = s / a[r][r];
  }
  return true;
}

// damped Newton on Y = c + dtlam f(Y) in log-eigenvalue space; guess in y
int newton_stage(const LogEigOde& ode, const double* c, double dtlam, double* y, double tol,
                 int maxIter) {
  double f[3], r[3], jac[3][3], lhs[3][3], ytr[3], ftr[3];
  auto residual = [&](const double* v, const double* fv) {
    double rn = 0.0;
    for (int i = 0; i < 3; ++i) rn = std::max(rn, std::abs(v[i] - c[i] - dtlam * fv[i]));
    return rn;
  };
  ode.eval(y, f);
  double rn = residual(y, f);
  for (int it = 0; it < maxIter; ++it) {
    if (rn <= tol) return it;
    ode.jacobian(y, jac);
    for (int i = 0; i < 3; ++i) {
      r[i] = y[i] - c[i] - dtlam * f[i];
      for (int j = 0; j < 3; ++j) lhs[i][j] = (i == j ? 1.0 : 0.0) - dtlam * jac[i][j];
    }
    if (!lu_solve3(lhs, r)) return -1;
    double step = 1.0;
    bool accepted = false;
    double rnNew = rn;
    for (int ls = 0; ls < 40; ++ls) {
      for (int i = 0; i < 3; ++i) ytr[i] = y[i] - step * r[i];
      ode.eval(ytr, ftr);
      rnNew = residual(ytr, ftr);
      if (rnNew < rn) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return -1;
    for (int i = 0; i < 3; ++i) {
      y[i] = ytr[i];
      f[i] = ftr[i];
    }
    rn = rnNew;
  }
  return (rn <= tol) ? maxIter : -1;
}

int solve_stage(const LogEigOde& ode, const double* c, double dtlam, double* y, double tol,
                int maxIter, int cellId) {
  for (int i = 0; i < 3; ++i) y[i] = c[i];
  int it = newton_stage(ode, c, dtlam, y, tol, maxIter);
  if (it >= 0) return it;
  // warm-started geometric homotopy in the stage weight
  for (int i = 0; i < 3; ++i) y[i] = c[i];
  int total = 0;
  for (int j = 10; j >= 0; --j) {
    const int k = newton_stage(ode, c, dtlam * std::pow(10.0, -j), y, tol, maxIter);
    if (k < 0)
      throw InvalidState("relax_cell: Newton did not converge at cell " +
                         std::to_string(cellId));
    total += k;
  }
  return total;
}

}  // namespace

RelaxCellStats relax_cell(Mat3& A, Vec3& J, double rho, double T, double dt,
                          const MaterialParams& par, const RelaxConfig& rc, int cellId) {
  RelaxCellStats stats;
  const double detStar = det(A);
  if (detStar <= 0.0)
    throw InvalidState("relax_cell: det(A*) = " + std::to_string(detStar) + " at cell " +
                       std::to_string(cellId));
  const bool doA = par.tau1 < rc.tauOff;
  const bool doJ = par.ch > 0.0 && par.tau2 < rc.tauOff;
  if (!doA && !doJ) return stats;
  double jRate = 0.0;
  if (doJ) {
    if (T <= 0.0)
      throw InvalidState("relax_cell: non-positive temperature at cell " +
                         std::to_string(cellId));
    jRate = T / (par.rho0 * par.T0 * par.tau2);
  }

  // fixed internal substepping keeps each SDIRK step accurate through the
  // transient (a-priori count, no step rejection)
  const double rateA = doA ? 6.0 * std::pow(detStar, 5.0 / 3.0) / par.tau1 : 0.0;
  const double z = dt * std::max(rateA, jRate);
  const int nSub = std::clamp(static_cast<int>(std::ceil(z / 4.0)), 1, 64);
  const double h = dt / nSub;
  const double lam = 1.0 - std::sqrt(0.5);

  if (doA) {
    const Mat3 G0 = metric(A);
    double g[3];
    Mat3 V;
    eig_sym3(G0, g, V);
    if (g[0] <= 0.0 || g[1] <= 0.0 || g[2] <= 0.0)
      throw InvalidState("relax_cell: degenerate metric at cell " + std::to_string(cellId));
    double w[3] = {std::log(g[0]), std::log(g[1]), std::log(g[2])};
    const double wsum0 = w[0] + w[1] + w[2];
    LogEigOde ode;
    ode.kappa = 3.0 / par.tau1;
    for (int sub = 0; sub < nSub; ++sub) {
      double y1[3], c2[3], y2[3], f1[3];
      stats.newtonIterations +=
          solve_stage(ode, w, h * lam, y1, rc.newtonTol, rc.newtonMaxIter, cellId);
      for (int i = 0; i < 3; ++i) f1[i] = (y1[i] - w[i]) / (h * lam);
      for (int i = 0; i < 3; ++i) c2[i] = w[i] + h * (1.0 - lam) * f1[i];
      stats.newtonIterations +=
          solve_stage(ode, c2, h * lam, y2, rc.newtonTol, rc.newtonMaxIter, cellId);
      // sum(w) = ln det(G) is an invariant of the flow; enforce it per substep
      const double shift = (wsum0 - (y2[0] + y2[1] + y2[2])) / 3.0;
      for (int i = 0; i < 3; ++i) w[i] = y2[i] + shift;
    }
    // A <- A V diag(sqrt(g/g0)) V^T
    Mat3 D{};
    for (int i = 0; i < 3; ++i) D(i, i) = std::sqrt(std::exp(w[i]) / g[i]);
    A = matmul(A, matmul(V, matmul(D, transpose(V))));
  }

  if (doJ) {
    // the thermal block is linear with T frozen: both stages in closed form
    for (int sub = 0; sub < nSub; ++sub) {
      const double den = 1.0 + h * lam * jRate;
      const Vec3 J1 = (1.0 / den) * J;
      const Vec3 c2 = J + (h * (1.0 - lam)) * (-jRate) * J1;
      J = (1.0 / den) * c2;
    }
  }
  (void)rho;
  return stats;
}

int relax_all(std::vector<State>& qStar, const MaterialParams& par, const RelaxConfig& rc,
              double dt) {
  if (!rc.enabled) return 0;
  const bool anyA = par.tau1 < rc.tauOff;
  const bool anyJ = par.ch > 0.0 && par.tau2 < rc.tauOff;
  if (!anyA && !anyJ) return 0;
  const int nc = static_cast<int>(qStar.size());
  int maxIters = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : maxIters)
#endif
  for (int c = 0; c < nc; ++c) {
    const Primitive prim = conserved_to_primitive(qStar[c], par, c);
    Mat3 A = prim.A;
    Vec3 J = prim.J;
    const RelaxCellStats st = relax_cell(A, J, prim.rho, prim.T, dt, par, rc, c);
    maxIters = std::max(maxIters, st.newtonIterations);
    for (int i = 0; i < 9; ++i) qStar[c][kA + i] = A.m[i];
    for (int i = 0; i < 3; ++i) qStar[c][kJ + i] = J[i];
  }
  return maxIters;
}

}  // namespace gpr

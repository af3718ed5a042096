#include <cmath>

#include "doctest.h"
#include "gpr/oracles.hpp"

using namespace gpr;
using namespace gpr::oracle;

TEST_CASE("exact Riemann solver star region") {
  RiemannState l{1.0, 0.0, 0.0, 1.0}, r{0.125, 0.0, 0.0, 0.1};
  const StarRegion s = euler_star(l, r, 1.4);
  CHECK(s.p == doctest::Approx(0.30313).epsilon(2e-5));
  CHECK(s.u == doctest::Approx(0.92745).epsilon(2e-5));

  // equal states: solution is that state everywhere
  RiemannState e{1.3, 0.4, -0.2, 2.0};
  for (double xi : {-3.0, -0.5, 0.0, 0.7, 4.0}) {
    const RiemannState out = euler_exact(e, e, 1.4, xi);
    CHECK(out.rho == doctest::Approx(e.rho).epsilon(1e-10));
    CHECK(out.un == doctest::Approx(e.un).epsilon(1e-10));
    CHECK(out.p == doctest::Approx(e.p).epsilon(1e-10));
  }

  // beyond the fastest wave the upstream state is returned exactly
  const double cl = std::sqrt(1.4 * l.p / l.rho);
  RiemannState out = euler_exact(l, r, 1.4, l.un - cl - 0.1);
  CHECK(out.rho == l.rho);
  CHECK(out.p == l.p);
  out = euler_exact(l, r, 1.4, 5.0);
  CHECK(out.rho == r.rho);

  // vacuum detection
  RiemannState vl{1.0, -10.0, 0.0, 0.01}, vr{1.0, 10.0, 0.0, 0.01};
  CHECK_THROWS_AS(euler_star(vl, vr, 1.4), std::domain_error);
}

TEST_CASE("Rankine-Hugoniot across returned shocks") {
  RiemannState l{1.0, 0.75, 0.0, 1.0}, r{0.125, 0.0, 0.0, 0.1};
  const double gamma = 1.4;
  const StarRegion s = euler_star(l, r, gamma);
  REQUIRE(s.p > r.p);  // right shock
  const double cr = std::sqrt(gamma * r.p / r.rho);
  const double g2 = (gamma + 1.0) / (2.0 * gamma), g1 = (gamma - 1.0) / (2.0 * gamma);
  const double sr = r.un + cr * std::sqrt(g2 * s.p / r.p + g1);
  const RiemannState post = euler_exact(l, r, gamma, sr - 1e-9);
  // mass and momentum jump conditions at speed sr
  const double m1 = r.rho * (r.un - sr), m2 = post.rho * (post.un - sr);
  CHECK(m1 == doctest::Approx(m2).epsilon(1e-6));
  const double f1 = r.p + r.rho * (r.un - sr) * (r.un - sr);
  const double f2 = post.p + post.rho * (post.un - sr) * (post.un - sr);
  CHECK(f1 == doctest::Approx(f2).epsilon(1e-6));
}

TEST_CASE("1D Euler reference agrees with the exact solver on Sod") {
  Case1d c;
  c.rhoL = 1.0;
  c.rhoR = 0.125;
  c.pL = 1.0;
  c.pR = 0.1;
  c.time = 0.2;
  c.par.set_gamma_cv(1.4, 2.5);
  const Profile1d prof = reference_1d(c, System1d::euler, 10000);
  RiemannState l{1.0, 0.0, 0.0, 1.0}, r{0.125, 0.0, 0.0, 0.1};
  double l1 = 0.0;
  const double dx = 1.0 / 10000;
  for (size_t i = 0; i < prof.x.size(); ++i) {
    const RiemannState ex = euler_exact(l, r, 1.4, prof.x[i] / c.time);
    l1 += dx * std::abs(prof.rho[i] - ex.rho);
  }
  CHECK(l1 < 1e-3);
}

TEST_CASE("1D references: uniform state unchanged, self-convergence") {
  Case1d c;
  c.rhoL = c.rhoR = 1.0;
  c.pL = c.pR = 1.0;
  c.u1L = c.u1R = 0.3;
  c.time = 0.1;
  c.par.set_gamma_cv(1.4, 2.5);
  const Profile1d prof = reference_1d(c, System1d::euler, 200);
  for (double v : prof.rho) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));

  // Sod self-convergence: L1 between n and 2n decreases monotonically
  Case1d sod;
  sod.rhoL = 1.0;
  sod.rhoR = 0.125;
  sod.pL = 1.0;
  sod.pR = 0.1;
  sod.time = 0.2;
  sod.par.set_gamma_cv(1.4, 2.5);
  double prev = 1e300;
  for (int n : {400, 800, 1600}) {
    const Profile1d a = reference_1d(sod, System1d::euler, n);
    const Profile1d b = reference_1d(sod, System1d::euler, 2 * n);
    double l1 = 0.0;
    for (int i = 0; i < n; ++i)
      l1 += (1.0 / n) * std::abs(a.rho[i] - 0.5 * (b.rho[2 * i] + b.rho[2 * i + 1]));
    CHECK(l1 < prev);
    prev = l1;
  }
}

TEST_CASE("1D GPR reference: solid shear waves bracket cs") {
  Case1d c;
  c.rhoL = 1.0;
  c.rhoR = 0.5;
  c.u2L = -0.2;
  c.u2R = 0.2;
  c.pL = 1.0;
  c.pR = 0.5;
  c.time = 0.2;
  c.par.set_gamma_cv(1.4, 1.0);
  c.par.cs = 1.0;
  c.par.ch = 0.0;
  c.par.rho0 = 1.0;
  c.par.T0 = temperature(1.0, 1.0, c.par);
  c.par.tau1 = tau1_from_mu(1e20, c.par);
  c.par.tau2 = tau2_from_kappa(1e20, c.par);
  const int n = 2000;
  const Profile1d prof = reference_1d(c, System1d::gpr, n);

  // locate the two shear waves as the extremal positions where u2 changes
  double xl = 0.0, xr = 0.0;
  for (int i = 1; i < n; ++i) {
    if (std::abs(prof.u2[i] - prof.u2[i - 1]) > 1e-4) {
      xl = prof.x[i];
      break;
    }
  }
  for (int i = n - 1; i > 0; --i) {
    if (std::abs(prof.u2[i] - prof.u2[i - 1]) > 1e-4) {
      xr = prof.x[i];
      break;
    }
  }
  // the medium drifts right in the star region, so the left shear wave is slowed
  // and the right one sped up: their speeds bracket cs
  CHECK(std::abs(xl / c.time) < c.par.cs);
  CHECK(std::abs(xr / c.time) > c.par.cs);
  // u2 develops an interior plateau structure distinct from the initial jump
  bool interiorChanged = false;
  for (int i = 0; i < n; ++i)
    if (std::abs(prof.x[i]) < 0.05 &&
        std::abs(prof.u2[i] + 0.2 * (prof.x[i] <= 0 ? 1.0 : -1.0)) > 0.05)
      interiorChanged = true;
  CHECK(interiorChanged);
}

TEST_CASE("first Stokes closed form") {
  CHECK(stokes_first(0.0, 0.4, 1e-2) == doctest::Approx(0.0));
  CHECK(stokes_first(100.0, 0.4, 1e-2) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(stokes_first(0.1, 0.4, 1e-2) == doctest::Approx(0.073629).epsilon(1e-4));
  CHECK_THROWS_AS(stokes_first(0.1, 0.0, 1e-2), std::domain_error);
}

#include <dicke/classical.hpp>
#include <dicke/dos.hpp>

#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace dicke;

namespace {

Params iso(double g, double j = 10.0, double w = 1.0, double w0 = 1.0) {
  return Params::isotropic_coupling(w, w0, g, j);
}

double fd_partial(const Params& p, const ClassicalState& x, int i,
                  double step = 1e-6) {
  ClassicalState a = x, b = x;
  a[i] += step;
  b[i] -= step;
  return (classical_energy(p, a) - classical_energy(p, b)) / (2.0 * step);
}

}  // namespace

TEST_CASE("scaled energy anchors") {
  // origin sits at the bottom of the normal phase for every coupling
  for (double g : {0.0, 0.3, 1.0, 2.5}) {
    const Params p = iso(g, 10.0, 0.8, 1.1);
    check_close(classical_energy(p, {0, 0, 0, 0}), -1.1, 1e-15, "origin");
  }
  // one rotating-wave coupling: 1/2 + 1/2 - 1 + 1*sqrt(3)/4*... = sqrt(3)/2
  const Params tc{1.0, 1.0, 1.0, 0.0, 10.0};
  check_close(classical_energy(tc, {1, 0, 1, 0}), std::sqrt(3.0) / 2.0, 1e-12,
              "rwa point");
  // counter-rotating part enters through p P only at this point
  const Params full{1.0, 1.0, 0.5, 0.5, 10.0};
  check_close(classical_energy(full, {1, 0, 1, 0}), std::sqrt(3.0) / 2.0,
              1e-12, "full coupling, same qQ weight");
}

TEST_CASE("flow is the symplectic gradient of the energy") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Params p{0.9, 1.3, 0.8, 0.5, 10.0};
  for (int trial = 0; trial < 25; ++trial) {
    ClassicalState x{2.0 * u(rng), 2.0 * u(rng), 1.2 * u(rng), 1.2 * u(rng)};
    const ClassicalState f = classical_rhs(p, x);
    check_close(f[0], fd_partial(p, x, 1), 1e-6, "dq/dt = dh/dp");
    check_close(f[1], -fd_partial(p, x, 0), 1e-6, "dp/dt = -dh/dq");
    check_close(f[2], fd_partial(p, x, 3), 1e-6, "dQ/dt = dh/dP");
    check_close(f[3], -fd_partial(p, x, 2), 1e-6, "dP/dt = -dh/dQ");
  }
}

TEST_CASE("jacobian matches finite differences and is infinitesimally symplectic") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Params p{1.1, 0.7, 1.4, 0.3, 10.0};
  Eigen::Matrix4d Om = Eigen::Matrix4d::Zero();
  Om(0, 1) = 1.0; Om(1, 0) = -1.0; Om(2, 3) = 1.0; Om(3, 2) = -1.0;
  for (int trial = 0; trial < 12; ++trial) {
    ClassicalState x{2.0 * u(rng), 2.0 * u(rng), 1.3 * u(rng), 1.3 * u(rng)};
    const Eigen::Matrix4d J = classical_jacobian(p, x);
    const double step = 1e-6;
    for (int col = 0; col < 4; ++col) {
      ClassicalState xa = x, xb = x;
      xa[col] += step;
      xb[col] -= step;
      const ClassicalState fa = classical_rhs(p, xa);
      const ClassicalState fb = classical_rhs(p, xb);
      for (int row = 0; row < 4; ++row)
        check_close(J(row, col), (fa[row] - fb[row]) / (2.0 * step), 2e-5,
                    "jacobian entry");
    }
    // J^T Om + Om J = 0 because J = Om * Hess(h)
    const Eigen::Matrix4d sym = J.transpose() * Om + Om * J;
    CHECK(sym.cwiseAbs().maxCoeff() < 1e-11 * std::max(1.0, J.norm()));
  }
}

TEST_CASE("ground state branches and quantum phase transition kink") {
  {
    const Params p = iso(1.0);  // twice critical, w = w0 = 1
    const auto gs = classical_ground_state(p);
    check_close(gs.x[0], -std::sqrt(15.0) / 2.0, 1e-12, "q minimum");
    check_close(gs.x[2], std::sqrt(1.5), 1e-12, "Q minimum");
    check_close(gs.eps, -2.125, 1e-15, "deformed energy");
    check_close(gs.jz, -0.25, 1e-15, "inversion");
    check_close(gs.n_scaled, 1.875, 1e-12, "photon density");
    check_close(classical_energy(p, gs.x), gs.eps, 1e-12, "energy consistent");
    const auto f = classical_rhs(p, gs.x);
    for (double fi : f) CHECK(std::abs(fi) < 1e-10);
  }
  {
    const auto gs = classical_ground_state(iso(0.3));
    check_close(gs.eps, -1.0, 1e-15, "normal phase energy");
    check_close(gs.jz, -1.0, 1e-15, "normal phase inversion");
    check_close(gs.n_scaled, 0.0, 1e-15, "normal phase photons");
  }
  const double gc = iso(1.0).gc();
  // order parameters are continuous across the transition
  CHECK(std::abs(classical_ground_state(iso(gc - 1e-9)).jz -
                 classical_ground_state(iso(gc + 1e-9)).jz) < 1e-6);
  CHECK(std::abs(classical_ground_state(iso(gc - 1e-9)).n_scaled -
                 classical_ground_state(iso(gc + 1e-9)).n_scaled) < 1e-6);
  // second derivative of the ground energy jumps at the critical coupling
  const double d = 1e-3;
  auto eps_at = [&](double g) { return classical_ground_state(iso(g)).eps; };
  const double left =
      (eps_at(gc - 3 * d) - 2 * eps_at(gc - 2 * d) + eps_at(gc - d)) / (d * d);
  const double right =
      (eps_at(gc + d) - 2 * eps_at(gc + 2 * d) + eps_at(gc + 3 * d)) / (d * d);
  CHECK(std::abs(left) < 1e-6);
  CHECK(right < -1.0);
}

TEST_CASE("global minimum energy, general couplings") {
  // isotropic case reduces to the closed-form ground energy
  for (double r : {0.4, 0.9, 1.0, 1.3, 2.0, 3.0}) {
    const Params p = iso(r * iso(1.0).gc(), 10.0, 1.0, 1.0);
    check_close(classical_min_energy(p), scaled_ground_energy(p), 1e-12,
                "isotropic minimum");
  }
  // anisotropic oracle: dense scan of the bosonic surface along both axes
  const Params p{0.9, 1.2, 1.3, 0.2, 10.0};
  double best = 1e300;
  for (int k = -200000; k <= 200000; ++k) {
    const double v = k * 5e-5 * 8.0;
    best = std::min(best, surface_min_bosonic(p, v, 0.0));
    best = std::min(best, surface_min_bosonic(p, 0.0, v));
  }
  check_close(classical_min_energy(p), best, 1e-6, "axis scan minimum");
  // normal phase: any coupling weaker than the critical one keeps -w0
  check_close(classical_min_energy(Params{1.0, 1.0, 0.3, 0.2, 10.0}), -1.0,
              1e-15, "weak coupling minimum");
}

TEST_CASE("energy surface projections against brute-force minimization") {
  const Params p = iso(1.0);  // twice critical
  const auto gs = classical_ground_state(p);
  check_close(surface_min_atomic(p, 0.0, 0.0), -1.0, 1e-15, "atomic origin");
  check_close(surface_min_atomic(p, gs.x[2], 0.0), gs.eps, 1e-12,
              "atomic minimum");
  check_close(surface_min_atomic(p, -gs.x[2], 0.0), gs.eps, 1e-12,
              "mirror atomic minimum");
  check_close(surface_min_bosonic(p, gs.x[0], 0.0), gs.eps, 1e-12,
              "bosonic minimum");
  check_close(surface_min_bosonic(p, 0.0, 0.0), -1.0, 1e-15, "bosonic origin");

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Params ani{1.05, 0.85, 1.1, 0.4, 10.0};
  for (int trial = 0; trial < 6; ++trial) {
    const double Q = 1.5 * u(rng), P = 1.5 * u(rng);
    double brute = 1e300;
    for (int iq = 0; iq <= 300; ++iq)
      for (int ip = 0; ip <= 300; ++ip) {
        const ClassicalState x{-6.0 + iq * 0.04, -6.0 + ip * 0.04, Q, P};
        brute = std::min(brute, classical_energy(ani, x));
      }
    const double h = surface_min_atomic(ani, Q, P);
    CHECK(h <= brute + 1e-12);
    CHECK(brute - h < 1e-3);
  }
  for (int trial = 0; trial < 6; ++trial) {
    const double q = 2.0 * u(rng), pp = 2.0 * u(rng);
    double brute = 1e300;
    for (int iQ = 0; iQ <= 400; ++iQ)
      for (int iP = 0; iP <= 400; ++iP) {
        const double Q = -2.0 + iQ * 0.01, P = -2.0 + iP * 0.01;
        if (Q * Q + P * P >= 4.0) continue;
        brute = std::min(brute, classical_energy(ani, {q, pp, Q, P}));
      }
    const double h = surface_min_bosonic(ani, q, pp);
    CHECK(h <= brute + 1e-12);
    CHECK(brute - h < 1e-3);
  }
}

TEST_CASE("integration: decoupled periods, drift, reversibility, boundary") {
  {
    // g = 0: boson and spin rotate independently at their own frequencies
    const Params p{0.9, 0.7 * std::sqrt(2.0), 0.0, 0.0, 10.0};
    const ClassicalState x0{0.4, -0.3, 0.5, 0.7};
    ClassicalState x = x0;
    advance(p, x, 0.0, 2.0 * M_PI / p.omega0);
    CHECK(std::abs(x[2] - x0[2]) < 1e-6);
    CHECK(std::abs(x[3] - x0[3]) < 1e-6);
    x = x0;
    advance(p, x, 0.0, 2.0 * M_PI / p.omega);
    CHECK(std::abs(x[0] - x0[0]) < 1e-6);
    CHECK(std::abs(x[1] - x0[1]) < 1e-6);
  }
  {
    const Params p = iso(1.0);  // twice critical
    const ClassicalState x0{0.3, 0.0, 1.0, 0.3};
    const auto tr = integrate(p, x0, 200.0, 0.5);
    CHECK(tr.t.size() == 401);
    CHECK(tr.max_drift < 1e-7);
    ClassicalState x = x0;
    advance(p, x, 0.0, 10.0);
    advance(p, x, 10.0, 0.0);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(x[i] - x0[i]) < 1e-6);
  }
  {
    const Params p = iso(1.0);  // twice critical
    ClassicalState x{0.0, 0.0, 1.9999999, 0.0};
    CHECK_THROWS_AS(advance(p, x, 0.0, 1.0), NumericalError);
  }
}

TEST_CASE("section for a decoupled system lies on a circle") {
  const Params p{1.0, 0.7 * std::sqrt(2.0), 0.0, 0.0, 10.0};
  const ClassicalState x0{0.6, -0.2, 0.8, 0.3};
  const double eps = classical_energy(p, x0);
  const double r0 = std::hypot(x0[2], x0[3]);
  auto pts = poincare_section(p, x0, eps, 10, 80.0);
  CHECK(pts.size() == 10);
  for (const auto& [Q, P] : pts)
    CHECK(std::abs(std::hypot(Q, P) - r0) < 1e-8);
  auto both = poincare_section(p, x0, eps, 25, 80.0, true);
  CHECK(both.size() > pts.size());
  CHECK_THROWS_AS(poincare_section(p, x0, eps + 0.1, 10, 80.0), ConfigError);
}

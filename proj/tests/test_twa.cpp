#include "test_util.hpp"

#include <dicke/coherent.hpp>
#include <dicke/shell.hpp>
#include <dicke/twa.hpp>

using namespace dicke;

namespace {

Params iso(double g, double j, double w = 1.0, double w0 = 1.0) {
  return Params::isotropic_coupling(w, w0, g, j);
}

}  // namespace

TEST_CASE("coherent wigner normalization and width") {
  // curvature deficit of the sphere Gaussian is 1/(6j); j = 20 brings the
  // quadrature identity inside 1%
  const double j = 20.0;
  ClassicalState x0{0.4, -0.2, 0.5, 0.7};

  check_close(wigner_coherent(x0, x0, j), (j / M_PI) * (j / M_PI), 1e-12,
              "peak");

  // the 4D integral factorizes; quadrature of each factor within 1%
  double s = 1.0 / std::sqrt(2.0 * j);
  double iqp = 0.0, hqp = 12.0 * s / 400.0;
  for (int a = 0; a < 400; ++a)
    for (int b = 0; b < 400; ++b) {
      double dq = -6.0 * s + (a + 0.5) * hqp;
      double dp = -6.0 * s + (b + 0.5) * hqp;
      iqp += (j / M_PI) * std::exp(-j * (dq * dq + dp * dp)) * hqp * hqp;
    }
  check_close(iqp, 1.0, 1e-6, "glauber factor");

  double iqP = 0.0, h = 4.0 / 600.0;
  for (int a = 0; a < 600; ++a)
    for (int b = 0; b < 600; ++b) {
      double Q = -2.0 + (a + 0.5) * h, P = -2.0 + (b + 0.5) * h;
      if (Q * Q + P * P >= 4.0) continue;
      double th = bloch_angle(x0, {x0[0], x0[1], Q, P});
      iqP += (j / M_PI) * std::exp(-j * th * th) * h * h;
    }
  CHECK_MESSAGE(std::abs(iqp * iqP - 1.0) < 0.01, "total " << iqp * iqP);

  // Wigner width is half the Husimi (overlap) width per coordinate
  ClassicalState dx = x0;
  dx[0] += 0.2;
  double wig = wigner_coherent(x0, dx, j) / wigner_coherent(x0, x0, j);
  double hus = coherent_overlap_sq(x0, dx, j);
  check_close(wig, hus * hus, 1e-12, "double exponent");
}

TEST_CASE("transform table values") {
  const double j = 5.0;
  double aj = std::sqrt(j * (j + 1.0));
  double bj = std::sqrt(j * (j + 1.0) * (2 * j - 1.0) * (2 * j + 3.0));

  ClassicalState x{1.3, -0.7, 0.8, -0.6};
  double r2 = x[2] * x[2] + x[3] * x[3];
  double s = std::sqrt(1.0 - r2 / 4.0);

  check_close(wigner_transform(TwaObservable::q(), x, j), 1.3, 1e-15, "q");
  check_close(wigner_transform(TwaObservable::p(2), x, j), 0.49, 1e-12, "p^2");
  check_close(wigner_transform(TwaObservable::Jx(), x, j), aj * 0.8 * s - 1.0,
              1e-12, "Jx");
  check_close(wigner_transform(TwaObservable::Jy(), x, j), aj * 0.6 * s - 1.0,
              1e-12, "Jy");
  check_close(wigner_transform(TwaObservable::Jz(), x, j),
              aj * (r2 / 2.0 - 1.0) - 1.0, 1e-12, "Jz");
  double cz = r2 / 2.0 - 1.0;
  check_close(wigner_transform(TwaObservable::Jz2(), x, j),
              0.5 * bj * (cz * cz - 1.0 / 3.0) + aj * aj / 3.0, 1e-12, "Jz2");
}

TEST_CASE("initial cloud statistics") {
  Params p = iso(1.0, 30.0);
  double aj = std::sqrt(p.j * (p.j + 1.0));
  const int n = 20000;

  // equator center: curvature bias vanishes and the table value is exact
  ClassicalState eq{0.4, -0.3, std::sqrt(2.0), 0.0};
  TwaResult r = twa_propagate(p, eq, {TwaObservable::Jz(), TwaObservable::q()},
                              {0.0}, n, 42);
  check_close(r.mean(0, 0), -1.0, 4.0 * r.std_err(0, 0), "equator Jz");
  check_close(r.mean(0, 1), 0.4, 4.0 * r.std_err(0, 1), "q mean");

  // generic center: the tangent Gaussian contracts the Bloch vector by
  // E[cos Theta] = 1 - 1/(2j) + O(j^-2)
  ClassicalState x0{0.2, 0.1, 0.6, -0.8};
  double cz0 = (0.6 * 0.6 + 0.8 * 0.8) / 2.0 - 1.0;
  TwaResult g = twa_propagate(p, x0, {TwaObservable::Jz()}, {0.0}, n, 43);
  double shrink = 1.0 - 1.0 / (2.0 * p.j);
  check_close(g.mean(0, 0), aj * cz0 * shrink - 1.0,
              4.0 * g.std_err(0, 0) + 2e-3 * std::abs(aj * cz0), "shrunk Jz");
  // spec-form identity holds within the curvature bound |c_z|/2
  CHECK(std::abs(g.mean(0, 0) - (aj * cz0 - 1.0)) <
        0.5 * std::abs(cz0) + 5.0 * g.std_err(0, 0));

  // determinism
  TwaResult g2 = twa_propagate(p, x0, {TwaObservable::Jz()}, {0.0}, n, 43);
  CHECK(g.mean(0, 0) == g2.mean(0, 0));
  TwaResult g3 = twa_propagate(p, x0, {TwaObservable::Jz()}, {0.0}, n, 44);
  CHECK(g.mean(0, 0) != g3.mean(0, 0));
}

TEST_CASE("decoupled oscillator frequency") {
  Params p = iso(0.0, 10.0, 1.3, 0.9);
  ClassicalState x0{1.2, -0.5, 0.8, 0.3};

  std::vector<double> ts;
  for (int k = 0; k <= 24; ++k) ts.push_back(k * 0.35);
  TwaResult r = twa_propagate(p, x0, {TwaObservable::q(), TwaObservable::p()},
                              ts, 400, 7);

  // every sample rotates rigidly at omega, so the ensemble mean does too
  double q0 = r.mean(0, 0), p0 = r.mean(0, 1);
  for (int k = 1; k <= 24; ++k) {
    double want = q0 * std::cos(p.omega * ts[k]) + p0 * std::sin(p.omega * ts[k]);
    check_close(r.mean(k, 0), want, 1e-7, "q rotation");
  }
  CHECK(r.escaped == 0);
}

TEST_CASE("boundary escapes are counted and refilled") {
  // above eps = omega0 trajectories can cross the Bloch pole, where the
  // (Q,P) chart degenerates; such samples are restarted and counted
  Params p = iso(1.0, 8.0);
  ClassicalState x0 = shell_sample(p, 1.6, 1, 5).front();

  std::vector<double> ts;
  for (int k = 1; k <= 8; ++k) ts.push_back(10.0 * k);
  TwaResult r = twa_propagate(p, x0, {TwaObservable::Jz()}, ts, 300, 3);
  CHECK(r.escaped > 0);
  for (int k = 0; k < 8; ++k) CHECK(std::isfinite(r.mean(k, 0)));

  // the ensemble keeps its full sample count despite the restarts:
  // |transform| <= a_j + 1 bounds the standard error by (a_j+1)/sqrt(300)
  CHECK(r.std_err(7, 0) < (std::sqrt(p.j * (p.j + 1.0)) + 1.0) / std::sqrt(300.0));
}

#include <dicke/classical.hpp>
#include <dicke/dos.hpp>

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <stdexcept>

namespace dicke {

namespace {

// spin-length constraint factor; the flow is singular at the Bloch boundary
// Q^2 + P^2 = 4, integration refuses to continue within kBlochMargin of it
constexpr double kBlochMargin = 1e-6;
constexpr double kDriftPerTime = 1e-9;

double sfac(const ClassicalState& x) {
  const double r2 = x[2] * x[2] + x[3] * x[3];
  if (r2 >= 4.0) throw NumericalError("phase point outside the Bloch disk");
  return std::sqrt(1.0 - 0.25 * r2);
}

}  // namespace

double classical_energy(const Params& p, const ClassicalState& x) {
  const double a = p.gminus + p.gplus;
  const double b = p.gminus - p.gplus;
  const double s = sfac(x);
  const double r2 = x[2] * x[2] + x[3] * x[3];
  return 0.5 * p.omega * (x[0] * x[0] + x[1] * x[1]) +
         p.omega0 * (0.5 * r2 - 1.0) +
         (a * x[0] * x[2] + b * x[1] * x[3]) * s;
}

ClassicalState classical_rhs(const Params& p, const ClassicalState& x) {
  const double a = p.gminus + p.gplus;
  const double b = p.gminus - p.gplus;
  const double s = sfac(x);
  const double u = a * x[0] * x[2] + b * x[1] * x[3];
  return {p.omega * x[1] + b * x[3] * s,
          -p.omega * x[0] - a * x[2] * s,
          p.omega0 * x[3] + b * x[1] * s - u * x[3] / (4.0 * s),
          -p.omega0 * x[2] - a * x[0] * s + u * x[2] / (4.0 * s)};
}

Eigen::Matrix4d classical_jacobian(const Params& p, const ClassicalState& x) {
  const double a = p.gminus + p.gplus;
  const double b = p.gminus - p.gplus;
  const double q = x[0], pq = x[1], Q = x[2], P = x[3];
  const double s = sfac(x);
  const double u = a * q * Q + b * pq * P;
  const double i4s = 1.0 / (4.0 * s);
  const double i16s3 = 1.0 / (16.0 * s * s * s);
  Eigen::Matrix4d J;
  J(0, 0) = 0.0;
  J(0, 1) = p.omega;
  J(0, 2) = -b * P * Q * i4s;
  J(0, 3) = b * s - b * P * P * i4s;
  J(1, 0) = -p.omega;
  J(1, 1) = 0.0;
  J(1, 2) = -a * s + a * Q * Q * i4s;
  J(1, 3) = a * Q * P * i4s;
  J(2, 0) = -a * Q * P * i4s;
  J(2, 1) = b * s - b * P * P * i4s;
  J(2, 2) = -b * pq * Q * i4s - a * q * P * i4s - u * P * Q * i16s3;
  J(2, 3) = p.omega0 - 2.0 * b * pq * P * i4s - u * i4s - u * P * P * i16s3;
  J(3, 0) = -a * s + a * Q * Q * i4s;
  J(3, 1) = b * P * Q * i4s;
  J(3, 2) = -p.omega0 + 2.0 * a * q * Q * i4s + u * i4s + u * Q * Q * i16s3;
  J(3, 3) = a * q * P * i4s + b * pq * Q * i4s + u * Q * P * i16s3;
  return J;
}

double classical_min_energy(const Params& p) {
  // h minimized over the Bloch sphere first gives the bosonic surface
  // (w/2)(q^2+p^2) - sqrt(w0^2 + a^2 q^2 + b^2 p^2); its minimum lies on the
  // axis of the larger coupling
  const double a = p.gminus + p.gplus;
  const double b = p.gminus - p.gplus;
  const double c2 = std::max(a * a, b * b);
  if (c2 <= p.omega * p.omega0) return -p.omega0;
  const double u2 = (c2 * c2 / (p.omega * p.omega) - p.omega0 * p.omega0) / c2;
  return 0.5 * p.omega * u2 - c2 / p.omega;
}

ClassicalGroundState classical_ground_state(const Params& p) {
  const double g = p.g();  // isotropic only
  const double gc = p.gc();
  if (g <= gc) return {{0.0, 0.0, 0.0, 0.0}, -p.omega0, -1.0, 0.0};
  const double rc2 = (gc * gc) / (g * g);  // jz = -rc2 in the deformed phase
  const double q = -(2.0 * g / p.omega) * std::sqrt(1.0 - rc2 * rc2);
  const double Q = std::sqrt(2.0 * (1.0 - rc2));
  return {{q, 0.0, Q, 0.0},
          scaled_ground_energy(p),
          -rc2,
          0.5 * q * q};
}

double surface_min_atomic(const Params& p, double Q, double P) {
  const double a = p.gminus + p.gplus;
  const double b = p.gminus - p.gplus;
  const double r2 = Q * Q + P * P;
  if (r2 > 4.0) throw ConfigError("atomic point outside the Bloch disk");
  const double s2 = 1.0 - 0.25 * r2;
  return p.omega0 * (0.5 * r2 - 1.0) -
         s2 * (a * a * Q * Q + b * b * P * P) / (2.0 * p.omega);
}

double surface_min_bosonic(const Params& p, double q, double p_) {
  const double a = p.gminus + p.gplus;
  const double b = p.gminus - p.gplus;
  return 0.5 * p.omega * (q * q + p_ * p_) -
         std::sqrt(p.omega0 * p.omega0 + a * a * q * q + b * b * p_ * p_);
}

namespace {

namespace ode = boost::numeric::odeint;

struct FlowSystem {
  const Params& p;
  void operator()(const ClassicalState& x, ClassicalState& dxdt,
                  double /*t*/) const {
    const double r2 = x[2] * x[2] + x[3] * x[3];
    if (r2 > 4.0 - kBlochMargin)
      throw NumericalError("trajectory reached the Bloch boundary");
    dxdt = classical_rhs(p, x);
  }
};

}  // namespace

void advance(const Params& p, ClassicalState& x, double t0, double t1,
             double tol) {
  if (t0 == t1) return;
  const double h0 = classical_energy(p, x);
  auto stepper =
      ode::make_controlled(tol, tol,
                           ode::runge_kutta_fehlberg78<ClassicalState>());
  const double dt0 = (t1 > t0 ? 1.0 : -1.0) * 1e-3;
  ode::integrate_adaptive(stepper, FlowSystem{p}, x, t0, t1, dt0);
  const double drift = std::abs(classical_energy(p, x) - h0);
  const double budget =
      kDriftPerTime * (std::abs(t1 - t0) + 1.0) * std::max(1.0, std::abs(h0));
  if (drift > budget)
    throw NumericalError("energy drift exceeded the integration budget");
}

Trajectory integrate(const Params& p, const ClassicalState& x0, double t_end,
                     double dt_sample, double tol) {
  if (dt_sample <= 0.0 || t_end <= 0.0)
    throw ConfigError("trajectory horizon and sample step must be positive");
  Trajectory tr;
  const double h0 = classical_energy(p, x0);
  const double scale = std::max(1.0, std::abs(h0));
  ClassicalState x = x0;
  double t = 0.0;
  tr.t.push_back(0.0);
  tr.x.push_back(x);
  const int n = static_cast<int>(std::ceil(t_end / dt_sample - 1e-12));
  for (int k = 1; k <= n; ++k) {
    const double tk = std::min(k * dt_sample, t_end);
    advance(p, x, t, tk, tol);
    t = tk;
    tr.t.push_back(t);
    tr.x.push_back(x);
    tr.max_drift = std::max(
        tr.max_drift, std::abs(classical_energy(p, x) - h0) / scale);
  }
  return tr;
}

std::vector<std::pair<double, double>> poincare_section(
    const Params& p, const ClassicalState& x0, double eps, int max_crossings,
    double t_max, bool both_directions) {
  const double h0 = classical_energy(p, x0);
  if (std::abs(h0 - eps) > 1e-8 * std::max(1.0, std::abs(eps)))
    throw ConfigError("section seed is off the requested energy shell");
  std::vector<std::pair<double, double>> pts;
  const double wmax = std::max(p.omega, p.omega0);
  const double dt = 0.01 * 2.0 * M_PI / wmax;
  ClassicalState xa = x0;
  double ta = 0.0;
  while (ta < t_max && static_cast<int>(pts.size()) < max_crossings) {
    ClassicalState xb = xa;
    const double tb = std::min(ta + dt, t_max);
    advance(p, xb, ta, tb);
    const bool up = xa[1] < 0.0 && xb[1] > 0.0;
    const bool down = xa[1] > 0.0 && xb[1] < 0.0;
    if (up || (both_directions && down)) {
      // bisection in time from xa; interval shrinks below 1e-10
      double lo = 0.0, hi = tb - ta;
      ClassicalState xm = xb;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        xm = xa;
        advance(p, xm, 0.0, mid);
        if ((xm[1] < 0.0) == up)
          lo = mid;
        else
          hi = mid;
      }
      pts.emplace_back(xm[2], xm[3]);
    }
    xa = xb;
    ta = tb;
  }
  return pts;
}

}  // namespace dicke

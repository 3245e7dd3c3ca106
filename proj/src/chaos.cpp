#include <dicke/chaos.hpp>
#include <dicke/rng.hpp>
#include <dicke/shell.hpp>

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <limits>

namespace dicke {

namespace {

namespace ode = boost::numeric::odeint;

constexpr double kTol = 1e-12;
constexpr double kBlochMargin = 1e-6;

// state + one tangent vector
struct TangentSystem {
  const Params& p;
  void operator()(const std::array<double, 8>& y, std::array<double, 8>& dydt,
                  double /*t*/) const {
    const ClassicalState x{y[0], y[1], y[2], y[3]};
    if (x[2] * x[2] + x[3] * x[3] > 4.0 - kBlochMargin)
      throw NumericalError("trajectory reached the Bloch boundary");
    const auto f = classical_rhs(p, x);
    const Eigen::Matrix4d J = classical_jacobian(p, x);
    Eigen::Vector4d v(y[4], y[5], y[6], y[7]);
    Eigen::Vector4d dv = J * v;
    for (int i = 0; i < 4; ++i) {
      dydt[i] = f[i];
      dydt[4 + i] = dv[i];
    }
  }
};

// state + full tangent frame, columns in y[4..19]
struct FrameSystem {
  const Params& p;
  void operator()(const std::array<double, 20>& y,
                  std::array<double, 20>& dydt, double /*t*/) const {
    const ClassicalState x{y[0], y[1], y[2], y[3]};
    if (x[2] * x[2] + x[3] * x[3] > 4.0 - kBlochMargin)
      throw NumericalError("trajectory reached the Bloch boundary");
    const auto f = classical_rhs(p, x);
    const Eigen::Matrix4d J = classical_jacobian(p, x);
    Eigen::Map<const Eigen::Matrix4d> V(y.data() + 4);
    Eigen::Matrix4d dV = J * V;
    for (int i = 0; i < 4; ++i) dydt[i] = f[i];
    Eigen::Map<Eigen::Matrix4d>(dydt.data() + 4) = dV;
  }
};

double fit_slope(const std::vector<double>& t, const std::vector<double>& v,
                 std::size_t first) {
  double st = 0, sv = 0, stt = 0, stv = 0;
  const std::size_t n = t.size() - first;
  if (n < 2) return 0.0;
  for (std::size_t k = first; k < t.size(); ++k) {
    st += t[k];
    sv += v[k];
    stt += t[k] * t[k];
    stv += t[k] * v[k];
  }
  const double det = n * stt - st * st;
  return det > 0 ? (n * stv - st * sv) / det : 0.0;
}

}  // namespace

LyapunovResult max_lyapunov(const Params& p, const ClassicalState& x0,
                            double t_end, double renorm_dt) {
  if (t_end <= 0.0 || renorm_dt <= 0.0)
    throw ConfigError("lyapunov horizon and renormalization step must be positive");
  std::array<double, 8> y{x0[0], x0[1], x0[2], x0[3], 0.5, 0.5, 0.5, 0.5};
  auto stepper = ode::make_controlled(
      kTol, kTol, ode::runge_kutta_fehlberg78<std::array<double, 8>>());
  double logsum = 0.0, t = 0.0;
  std::vector<double> ts, run;
  const int n = static_cast<int>(std::ceil(t_end / renorm_dt - 1e-12));
  for (int k = 1; k <= n; ++k) {
    const double tk = std::min(k * renorm_dt, t_end);
    ode::integrate_adaptive(stepper, TangentSystem{p}, y, t, tk, 1e-3);
    t = tk;
    double norm = 0.0;
    for (int i = 4; i < 8; ++i) norm += y[i] * y[i];
    norm = std::sqrt(norm);
    logsum += std::log(norm);
    for (int i = 4; i < 8; ++i) y[i] /= norm;
    ts.push_back(t);
    run.push_back(logsum / t);
  }
  const std::size_t first = ts.size() - std::max<std::size_t>(ts.size() / 5, 2);
  const double slope = fit_slope(ts, run, first);
  return {run.back(), std::abs(slope) * t_end};
}

std::array<double, 4> lyapunov_spectrum(const Params& p,
                                        const ClassicalState& x0, double t_end,
                                        double renorm_dt) {
  std::array<double, 20> y{};
  for (int i = 0; i < 4; ++i) y[i] = x0[i];
  Eigen::Map<Eigen::Matrix4d>(y.data() + 4) = Eigen::Matrix4d::Identity();
  auto stepper = ode::make_controlled(
      kTol, kTol, ode::runge_kutta_fehlberg78<std::array<double, 20>>());
  std::array<double, 4> sums{};
  double t = 0.0;
  const int n = static_cast<int>(std::ceil(t_end / renorm_dt - 1e-12));
  for (int k = 1; k <= n; ++k) {
    const double tk = std::min(k * renorm_dt, t_end);
    ode::integrate_adaptive(stepper, FrameSystem{p}, y, t, tk, 1e-3);
    t = tk;
    Eigen::Map<Eigen::Matrix4d> V(y.data() + 4);
    // modified Gram-Schmidt; the diagonal norms accumulate the exponents
    for (int c = 0; c < 4; ++c) {
      for (int b = 0; b < c; ++b) V.col(c) -= V.col(b).dot(V.col(c)) * V.col(b);
      const double r = V.col(c).norm();
      sums[c] += std::log(r);
      V.col(c) /= r;
    }
  }
  std::array<double, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = sums[i] / t_end;
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

ChaosMap chaos_map(const Params& base, const std::vector<double>& couplings,
                   const std::vector<double>& energies, int samples,
                   std::uint64_t seed, double t_end_base) {
  const double gref = std::max(std::abs(base.gminus), std::abs(base.gplus));
  if (gref == 0.0)
    throw ConfigError("chaos map needs a nonzero base coupling direction");
  if (samples < 1) throw ConfigError("chaos map needs at least one sample");
  ChaosMap map;
  map.couplings = couplings;
  map.energies = energies;
  map.samples = samples;
  map.seed = seed;
  map.t_end_base =
      t_end_base > 0.0 ? t_end_base : 500.0 * 2.0 * M_PI / base.omega;
  const auto rows = static_cast<Eigen::Index>(energies.size());
  const auto cols = static_cast<Eigen::Index>(couplings.size());
  map.fraction.setConstant(rows, cols,
                           std::numeric_limits<double>::quiet_NaN());
  map.mean_lambda.setConstant(rows, cols,
                              std::numeric_limits<double>::quiet_NaN());
  map.horizon_factor.setZero(rows, cols);

  for (Eigen::Index c = 0; c < cols; ++c) {
    Params pc = base;
    pc.gminus = couplings[c] * base.gminus / gref;
    pc.gplus = couplings[c] * base.gplus / gref;
    pc.validate();
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double eps = energies[r];
      if (eps <= classical_min_energy(pc) + 1e-9) continue;  // empty shell
      const std::uint64_t cell = static_cast<std::uint64_t>(c * rows + r);
      std::vector<ClassicalState> seeds;
      try {
        seeds = shell_sample(pc, eps, samples, derive_seed(seed, cell, 0));
      } catch (const ConfigError&) {
        continue;  // shell empty in practice
      }
      double t_end = map.t_end_base;
      int factor = 1;
      int chaotic = 0, valid = 0;
      double lam_sum = 0.0;
      for (int pass = 0;; ++pass) {
        chaotic = valid = 0;
        lam_sum = 0.0;
        int border = 0;
        for (const auto& x0 : seeds) {
          LyapunovResult lr;
          try {
            lr = max_lyapunov(pc, x0, t_end);
          } catch (const NumericalError&) {
            continue;  // boundary collision, drop the seed
          }
          ++valid;
          lam_sum += lr.lambda;
          const double th = std::max(5.0 / t_end, 3.0 * lr.uncertainty);
          if (lr.lambda > th) ++chaotic;
          if (lr.lambda > 0.7 * th && lr.lambda < 1.5 * th) ++border;
        }
        if (valid == 0) break;
        if (pass >= 2 || border <= 0.05 * valid) break;
        t_end *= 2.0;
        factor *= 2;
      }
      if (valid == 0) continue;
      map.fraction(r, c) = static_cast<double>(chaotic) / valid;
      map.mean_lambda(r, c) = lam_sum / valid;
      map.horizon_factor(r, c) = factor;
    }
  }
  return map;
}

}  // namespace dicke

#include <dicke/rng.hpp>
#include <dicke/shell.hpp>

#include <cmath>
#include <random>

namespace dicke {

namespace {

constexpr double kBlochReject = 1e-6;  // stay away from Q^2 + P^2 = 4

// |p| bound on the shell: h >= (w/2)p^2 - |b||p| - w0 - a^2/(2w)
double p_bound(const Params& p, double eps) {
  const double a = p.gminus + p.gplus;
  const double b = std::abs(p.gminus - p.gplus);
  const double slack = eps + p.omega0 + a * a / (2.0 * p.omega);
  if (slack <= 0.0 && b == 0.0) return 0.0;
  return (b + std::sqrt(b * b + 2.0 * p.omega * std::max(0.0, slack))) /
             p.omega +
         1e-12;
}

}  // namespace

std::vector<ShellPoint> shell_sample_weighted(const Params& p, double eps,
                                              int count, std::uint64_t seed) {
  std::vector<ShellPoint> out;
  if (count == 0) return out;
  if (count < 0) throw ConfigError("sample count must be non-negative");
  if (eps < classical_min_energy(p))
    throw ConfigError("energy shell below the classical minimum is empty");

  const double a = p.gminus + p.gplus;
  const double b = p.gminus - p.gplus;
  const double pmax = p_bound(p, eps);
  auto rng = make_rng(seed, 0xD1CE, 0);
  std::uniform_real_distribution<double> uQP(-2.0, 2.0);
  std::uniform_real_distribution<double> up(-pmax, pmax);

  const long max_attempts =
      std::max(200000L, 10000L * static_cast<long>(count));
  long attempts = 0;
  out.reserve(count + 1);
  double wsum = 0.0;
  while (static_cast<int>(out.size()) < count && attempts < max_attempts) {
    ++attempts;
    const double Q = uQP(rng), P = uQP(rng);
    const double r2 = Q * Q + P * P;
    if (r2 > 4.0 - kBlochReject) continue;
    const double pp = up(rng);
    const double s = std::sqrt(1.0 - 0.25 * r2);
    const double rest = 0.5 * p.omega * pp * pp +
                        p.omega0 * (0.5 * r2 - 1.0) + b * pp * P * s;
    const double beta = a * Q * s;
    const double disc = beta * beta - 2.0 * p.omega * (rest - eps);
    if (disc <= 0.0) continue;
    const double sd = std::sqrt(disc);
    for (double sign : {1.0, -1.0}) {
      double q = (-beta + sign * sd) / p.omega;
      ClassicalState x{q, pp, Q, P};
      // one Newton polish; the residual of the exact quadratic root is
      // already at machine level
      const double grad = p.omega * q + beta;
      if (std::abs(grad) > 1e-300)
        x[0] -= (classical_energy(p, x) - eps) / grad;
      if (std::abs(classical_energy(p, x) - eps) >
          1e-10 * std::max(1.0, std::abs(eps)))
        continue;
      out.push_back({x, 1.0 / sd});
      wsum += 1.0 / sd;
    }
  }
  if (out.empty()) throw ConfigError("energy shell appears to be empty");
  if (static_cast<int>(out.size()) > count) {
    wsum -= out.back().w;
    out.pop_back();
  }
  const double scale = out.size() / wsum;
  for (auto& sp : out) sp.w *= scale;
  return out;
}

std::vector<ClassicalState> shell_sample(const Params& p, double eps,
                                         int count, std::uint64_t seed) {
  std::vector<ClassicalState> out;
  if (count == 0) return out;
  const int pool = std::max(30 * count, 3000);
  const auto cand = shell_sample_weighted(p, eps, pool, seed);
  double wtot = 0.0;
  for (const auto& c : cand) wtot += c.w;
  // systematic resampling keeps the draw deterministic for a given seed
  auto rng = make_rng(seed, 0xD1CE, 1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double u0 = u01(rng);
  out.reserve(count);
  double cum = 0.0;
  std::size_t i = 0;
  for (int k = 0; k < count; ++k) {
    const double target = (k + u0) / count * wtot;
    while (i < cand.size() && cum + cand[i].w < target) cum += cand[i++].w;
    out.push_back(cand[std::min(i, cand.size() - 1)].x);
  }
  return out;
}

}  // namespace dicke

#include <dicke/stats.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

namespace dicke {

namespace {

// accumulate ratios of one sorted sequence; returns (sum, count)
void accumulate_ratios(Eigen::VectorXd e, double& sum, long& count) {
  std::sort(e.data(), e.data() + e.size());
  if (e.size() < 3) return;
  double band = e(e.size() - 1) - e(0);
  double guard = 1e-10 * band;  // numerically degenerate pairs are artifacts
  for (int i = 0; i + 2 < e.size(); ++i) {
    double s0 = e(i + 1) - e(i);
    double s1 = e(i + 2) - e(i + 1);
    double lo = std::min(s0, s1), hi = std::max(s0, s1);
    if (hi < guard) continue;
    sum += lo / hi;
    ++count;
  }
}

}  // namespace

double mean_spacing_ratio(const Eigen::VectorXd& energies) {
  double sum = 0.0;
  long count = 0;
  accumulate_ratios(energies, sum, count);
  return count ? sum / count : std::nan("");
}

double mean_spacing_ratio(const std::vector<Eigen::VectorXd>& sequences) {
  double sum = 0.0;
  long count = 0;
  for (const auto& e : sequences) accumulate_ratios(e, sum, count);
  return count ? sum / count : std::nan("");
}

Eigen::VectorXd form_factor(const Eigen::VectorXd& energies,
                            const Eigen::VectorXd& times) {
  Eigen::VectorXd out(times.size());
  double d = double(energies.size());
  for (int i = 0; i < times.size(); ++i) {
    std::complex<double> z = 0.0;
    for (int k = 0; k < energies.size(); ++k)
      z += std::polar(1.0, -energies(k) * times(i));
    out(i) = std::norm(z) / (d * d);
  }
  return out;
}

double b2_orthogonal(double t) {
  t = std::abs(t);
  if (t <= 1.0) return 1.0 - 2.0 * t + t * std::log(2.0 * t + 1.0);
  return -1.0 + t * std::log((2.0 * t + 1.0) / (2.0 * t - 1.0));
}

}  // namespace dicke

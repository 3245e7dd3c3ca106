#include <dicke/chaos.hpp>
#include <dicke/shell.hpp>

#include "test_util.hpp"

#include <cmath>

using namespace dicke;

namespace {
const Params kIso = Params::isotropic_coupling(1.0, 1.0, 1.0, 30.0);
bool regular_by_threshold(const LyapunovResult& lr, double t_end) {
  return lr.lambda <= std::max(5.0 / t_end, 3.0 * lr.uncertainty);
}
}  // namespace

TEST_CASE("decoupled and near-minimum motion is classified regular") {
  {
    const Params p{1.0, 0.7 * std::sqrt(2.0), 0.0, 0.0, 30.0};
    const auto lr = max_lyapunov(p, {0.6, -0.2, 0.8, 0.3}, 300.0);
    CHECK(std::abs(lr.lambda) < 0.02);
    CHECK(regular_by_threshold(lr, 300.0));
  }
  {
    auto x = classical_ground_state(kIso).x;
    x[0] += 0.01;  // small oscillation around the deformed minimum
    const auto lr = max_lyapunov(kIso, x, 500.0);
    CHECK(regular_by_threshold(lr, 500.0));
  }
}

TEST_CASE("strongly chaotic shell point has a resolved positive exponent") {
  const auto x0 = shell_sample(kIso, -0.5, 1, 31415)[0];
  const auto lr = max_lyapunov(kIso, x0, 500.0);
  CHECK(lr.lambda > 0.03);
  CHECK(lr.lambda > std::max(5.0 / 500.0, 3.0 * lr.uncertainty));
}

TEST_CASE("spectrum obeys the symplectic pairing") {
  const auto x0 = shell_sample(kIso, -0.5, 1, 2024)[0];
  const auto spec = lyapunov_spectrum(kIso, x0, 400.0);
  CHECK(spec[0] > 0.03);
  CHECK(std::abs(spec[0] + spec[3]) < 0.02);  // {l, 0, 0, -l}
  CHECK(std::abs(spec[1]) < 0.05);
  CHECK(std::abs(spec[2]) < 0.05);
  CHECK(std::abs(spec[0] + spec[1] + spec[2] + spec[3]) < 0.02);
  const auto lr = max_lyapunov(kIso, x0, 400.0);
  CHECK(std::abs(lr.lambda - spec[0]) < std::max(0.25 * spec[0], 0.02));
}

TEST_CASE("classification map: chaotic cell, integrable column, empty shell") {
  const double horizon = 150.0 * 2.0 * M_PI;
  {
    const auto map =
        chaos_map(kIso, {1.0}, {-0.5, -3.0}, 12, 7777, horizon);
    CHECK(map.fraction(0, 0) >= 0.9);
    CHECK(std::isnan(map.fraction(1, 0)));  // below the ground energy
    CHECK(map.horizon_factor(0, 0) >= 1);
    CHECK(map.mean_lambda(0, 0) > 0.03);
    CHECK(map.t_end_base == horizon);
  }
  {
    // one rotating-wave coupling only: integrable at every energy
    const Params rwa{1.0, 1.0, 1.5, 0.0, 30.0};
    const auto map = chaos_map(rwa, {1.5}, {-0.5}, 12, 7777, horizon);
    CHECK(map.fraction(0, 0) == 0.0);
  }
}

TEST_CASE("map reruns are bit-identical") {
  const double horizon = 80.0 * 2.0 * M_PI;
  const auto a = chaos_map(kIso, {0.6, 1.0}, {-0.6}, 6, 123, horizon);
  const auto b = chaos_map(kIso, {0.6, 1.0}, {-0.6}, 6, 123, horizon);
  for (Eigen::Index c = 0; c < 2; ++c) {
    CHECK(a.fraction(0, c) == b.fraction(0, c));
    CHECK(a.mean_lambda(0, c) == b.mean_lambda(0, c));
    CHECK(a.horizon_factor(0, c) == b.horizon_factor(0, c));
  }
}

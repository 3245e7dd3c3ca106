#pragma once
#include <dicke/classical.hpp>
#include <dicke/params.hpp>

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace dicke {

// largest Lyapunov exponent from tangent-vector growth with unit-time
// renormalization; uncertainty extrapolates the least-squares slope of the
// running estimate over the final 20% of the run to the whole horizon, so a
// still-drifting estimate (regular orbits decay like log(t)/t) carries an
// uncertainty comparable to its own value
struct LyapunovResult {
  double lambda = 0.0;
  double uncertainty = 0.0;
};
LyapunovResult max_lyapunov(const Params& p, const ClassicalState& x0,
                            double t_end, double renorm_dt = 1.0);

// all four exponents via repeated Gram-Schmidt of the tangent frame,
// ordered descending; symplectic pairing gives {l, 0, 0, -l}
std::array<double, 4> lyapunov_spectrum(const Params& p,
                                        const ClassicalState& x0, double t_end,
                                        double renorm_dt = 1.0);

// chaotic-fraction map over coupling strength and scaled energy; the coupling
// axis rescales the base couplings so an anisotropic base keeps its ratio
struct ChaosMap {
  std::vector<double> couplings;
  std::vector<double> energies;
  Eigen::MatrixXd fraction;       // energy rows x coupling cols, NaN = empty
  Eigen::MatrixXd mean_lambda;    // mean exponent over valid seeds
  Eigen::MatrixXi horizon_factor; // 1, 2 or 4 after automatic doubling
  double t_end_base = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};
// threshold per trajectory: max(5/t_end, 3 x uncertainty); runs whose
// exponent lands within [0.7, 1.5] of it are unresolved, and a cell with more
// than 5% unresolved runs doubles its horizon (at most twice)
ChaosMap chaos_map(const Params& base, const std::vector<double>& couplings,
                   const std::vector<double>& energies, int samples,
                   std::uint64_t seed, double t_end_base = 0.0);

}  // namespace dicke

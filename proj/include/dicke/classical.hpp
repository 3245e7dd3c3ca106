#pragma once
#include <dicke/params.hpp>

#include <Eigen/Dense>

#include <array>
#include <utility>
#include <vector>

namespace dicke {

// phase point (q, p, Q, P): j-scaled boson quadratures and Bloch projection
using ClassicalState = std::array<double, 4>;

// scaled energy h = H_cl/j; anisotropic couplings enter as a = g- + g+
// multiplying qQ and b = g- - g+ multiplying pP
double classical_energy(const Params& p, const ClassicalState& x);
ClassicalState classical_rhs(const Params& p, const ClassicalState& x);
Eigen::Matrix4d classical_jacobian(const Params& p, const ClassicalState& x);

// global minimum of h over the whole phase space (any coupling ratio)
double classical_min_energy(const Params& p);

struct ClassicalGroundState {
  ClassicalState x;
  double eps;
  double jz;        // per spin, in [-1, 1]
  double n_scaled;  // photons per spin
};
ClassicalGroundState classical_ground_state(const Params& p);

// minimum of h over the conjugate plane at a fixed point of the other plane
double surface_min_atomic(const Params& p, double Q, double P);
double surface_min_bosonic(const Params& p, double q, double p_);

// adaptive integration; throws when the Bloch boundary is reached or the
// relative energy drift exceeds 1e-9 per unit time
void advance(const Params& p, ClassicalState& x, double t0, double t1,
             double tol = 1e-12);

struct Trajectory {
  std::vector<double> t;
  std::vector<ClassicalState> x;
  double max_drift = 0.0;
};
Trajectory integrate(const Params& p, const ClassicalState& x0, double t_end,
                     double dt_sample, double tol = 1e-12);

// (Q, P) at p = 0 crossings with dp/dt > 0 (optionally both directions),
// crossing times located by bisection to 1e-10
std::vector<std::pair<double, double>> poincare_section(
    const Params& p, const ClassicalState& x0, double eps, int max_crossings,
    double t_max, bool both_directions = false);

}  // namespace dicke

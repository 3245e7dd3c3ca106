#pragma once

#include <dicke/classical.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace dicke {

// observables with a closed-form Wigner transform; linear combinations are
// taken by combining output curves
struct TwaObservable {
    enum class Kind { q_pow, p_pow, jx, jy, jz, jx2, jy2, jz2 };
    Kind kind = Kind::q_pow;
    int n = 1;  // power for q_pow / p_pow

    static TwaObservable q(int n = 1) { return {Kind::q_pow, n}; }
    static TwaObservable p(int n = 1) { return {Kind::p_pow, n}; }
    static TwaObservable Jx() { return {Kind::jx, 1}; }
    static TwaObservable Jy() { return {Kind::jy, 1}; }
    static TwaObservable Jz() { return {Kind::jz, 1}; }
    static TwaObservable Jx2() { return {Kind::jx2, 1}; }
    static TwaObservable Jy2() { return {Kind::jy2, 1}; }
    static TwaObservable Jz2() { return {Kind::jz2, 1}; }
};

// Wigner symbol O(x) evaluated at a phase-space point. Spin observables use
// a_j = sqrt(j(j+1)), b_j = sqrt(j(j+1)(2j-1)(2j+3)) and the Bloch projections
// c_x = Q s, c_y = -P s, c_z = (Q^2+P^2)/2 - 1.
double wigner_transform(const TwaObservable& o, const ClassicalState& x, double j);

// one draw from the coherent-state Wigner cloud at x0: Gaussian of width
// 1/sqrt(2j) per axis in (q,p) and in the sphere tangent plane. Throws
// NumericalError if the Bloch image keeps landing outside the open disk.
ClassicalState wigner_draw(const ClassicalState& x0, double j,
                           std::mt19937_64& rng);

struct TwaResult {
    std::vector<double> ts;
    Eigen::MatrixXd mean;     // n_times x n_obs
    Eigen::MatrixXd std_err;  // Monte Carlo standard error, same shape
    long escaped = 0;         // draws rejected or trajectories restarted
};

// truncated Wigner propagation: the initial Wigner function of the coherent
// state at x0 (Gaussian in (q,p) and in the sphere tangent plane, width
// 1/sqrt(2j) per axis) is transported along classical trajectories; samples
// that leave the Bloch disk are redrawn and counted.
TwaResult twa_propagate(const Params& p, const ClassicalState& x0,
                        const std::vector<TwaObservable>& obs,
                        const std::vector<double>& ts, int n_samples,
                        std::uint64_t seed);

}  // namespace dicke

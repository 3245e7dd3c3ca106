#pragma once

#include <dicke/coherent.hpp>
#include <dicke/shell.hpp>
#include <dicke/spectral.hpp>

namespace dicke {

// regular cell-centered grid for phase-plane maps; x is the first coordinate
// (Q or q), y the second (P or p)
struct PlaneGrid {
    double x_lo = -2.0, x_hi = 2.0;
    double y_lo = -2.0, y_hi = 2.0;
    int nx = 201, ny = 201;

    double dx() const { return (x_hi - x_lo) / nx; }
    double dy() const { return (y_hi - y_lo) / ny; }
    double x(int i) const { return x_lo + (i + 0.5) * dx(); }
    double y(int k) const { return y_lo + (k + 0.5) * dy(); }
};

// quantum state prepared for phase-space evaluation: a weighted mixture of
// pure components, each stored as a pair of parity-sector wavefunctions
// (either part may be zero). Pure states are single-component mixtures.
struct PhaseState {
    Params p;
    int N_max = 0;
    ParityBasis bp, bm;
    Eigen::MatrixXcd comp_p;   // dim_p x ncomp
    Eigen::MatrixXcd comp_m;   // dim_m x ncomp
    Eigen::VectorXd weights;   // mixture weights

    int ncomp() const { return static_cast<int>(weights.size()); }

    static PhaseState pure(const Params& p, int N_max,
                           const Eigen::VectorXcd& psi_p,
                           const Eigen::VectorXcd& psi_m);
    static PhaseState eigenstate(const Spectrum& s, int k);
    static PhaseState coherent(const Params& p, int N_max, const ClassicalState& x);
    // equal-weight mixture of converged levels with scaled energy in the window
    static PhaseState microcanonical(const Spectrum& plus, const Spectrum& minus,
                                     double eps_lo, double eps_hi);
};

// Husimi value Q(x) = sum_i w_i |<x|comp_i>|^2
double husimi_value(const PhaseState& st, const ClassicalState& x);

// reduced spin density of the mixture in the z-quantized basis
Eigen::MatrixXcd rho_atomic(const PhaseState& st);

// atomic projection Q~(Q,P) = <z|rho_A|z>; integrates to 4 pi / (2j+1)
Eigen::MatrixXd husimi_atomic_map(const Eigen::MatrixXcd& rho_z, int two_j,
                                  const PlaneGrid& g);

// bosonic projection Q~(q,p) = <alpha|rho_B|alpha>; integrates to 2 pi / j
Eigen::MatrixXd husimi_bosonic_map(const PhaseState& st, const PlaneGrid& g);

// energy-shell moment map: integral dp over the shell of Q(x)^alpha /|dh/dq|,
// both q-roots, evaluated on a (Q,P) grid. alpha = 1 is the plain projection.
Eigen::MatrixXd husimi_shell_map(const PhaseState& st, double eps,
                                 const PlaneGrid& g, double alpha = 1.0,
                                 int n_phi = 32);

// Husimi values of several aligned pure states on a shared shell sample set;
// states are columns, result is (samples x states)
Eigen::MatrixXd husimi_shell_values(const Params& p, const ParityBasis& bp,
                                    const ParityBasis& bm,
                                    const Eigen::MatrixXcd& states_p,
                                    const Eigen::MatrixXcd& states_m,
                                    const std::vector<ShellPoint>& pts);

// ---- Renyi occupied-volume fractions ----

// quadrature form: f >= 0 sampled with cell measures mu over a region of
// total measure V; the distribution is f / integral(f). alpha = 1 uses the
// Shannon limit. A uniform f returns 1 for every alpha.
double renyi_occupation(const Eigen::ArrayXd& f, const Eigen::ArrayXd& mu,
                        double V, double alpha);

// microcanonical Monte Carlo form over shell samples with mean-1 importance
// weights; the shell volume cancels:
// L_alpha = E[Q]^{alpha/(alpha-1)} E[Q^alpha]^{1/(1-alpha)}
double renyi_occupation_mc(const Eigen::ArrayXd& q, const Eigen::ArrayXd& w,
                           double alpha);

// occupation of the atomic plane computed from an atomic map on its grid
double renyi_atomic(const Eigen::MatrixXd& map, const PlaneGrid& g, double alpha);

// random-state ceiling Gamma(alpha+1)^{1/(1-alpha)} (exponential ensemble)
double renyi_random_ceiling(double alpha);

}  // namespace dicke

#pragma once

#include <dicke/coherent.hpp>
#include <dicke/dos.hpp>
#include <dicke/spectral.hpp>

#include <Eigen/Dense>

#include <cstdint>

namespace dicke {

// ---- initial states carried in the energy eigenbasis ----

// amplitudes over the converged eigenstates, sectors kept apart so evolved
// vectors can be rebuilt in the adapted basis. Either sector may be empty.
struct EigenState {
    Eigen::VectorXcd c_plus, c_minus;
    Eigen::VectorXd e_plus, e_minus;  // matching eigenvalues

    double norm2() const;
    // sum w_k^2 of the weights w_k = |c_k|^2 normalized to sum 1; this is the
    // infinite-time average of the survival probability
    double ipr() const;
    // flattened components: eigenvalues and normalized weights
    void components(Eigen::VectorXd& E, Eigen::VectorXd& w) const;

    static EigenState coherent(const Spectrum& plus, const Spectrum& minus,
                               const ClassicalState& x);
};

// ---- LDOS ----

struct LdosProfile {
    Eigen::VectorXd E, w;      // components (weights normalized to sum 1)
    double E_c = 0.0;          // mean energy
    double sigma0 = 0.0;       // width
    double leak = 0.0;         // probability lost to truncation, 1 - norm2
    double r2_gaussian = 0.0;  // binned fit against the moment Gaussian
    bool degenerate = false;   // single effective component, sigma0 = 0
};

LdosProfile ldos(const EigenState& st);

// ---- LDOS envelopes of random-state ensembles ----

enum class EnvelopeKind { rectangular, bounded_gaussian, gaussian };

// unimodal envelope rho(E) with unit integral over its support
struct Envelope {
    EnvelopeKind kind = EnvelopeKind::gaussian;
    double E_c = 0.0;
    double width = 1.0;           // sigma, or half width for the rectangular kind
    double E_a = 0.0, E_b = 0.0;  // support bounds of the bounded kinds
    double C = 1.0;               // bounded-gaussian normalization constant

    static Envelope rectangular(double E_c, double half_width);
    static Envelope bounded_gaussian(double E_c, double sigma, double E_a,
                                     double E_b);
    static Envelope gaussian(double E_c, double sigma);

    double density(double E) const;
    // |Fourier transform of rho|^2, the short-time survival factor; 1 at t=0.
    // Closed forms for the rectangular and gaussian kinds, panel quadrature
    // for the bounded gaussian (stable at any t, unlike the erf expression).
    double st(double t) const;
};

// random superposition within one parity sector,
// c_k = sqrt(r_k rho(E_k) / (M nu(E_k))) e^{i theta_k}, r_k, theta_k uniform;
// M normalizes the weights to sum 1 exactly
EigenState random_state(const Envelope& env, const Spectrum& sp, const Dos& dos,
                        std::uint64_t seed);

// effective ensemble dimension [sum rho/nu]^2 / sum rho^2/nu^2 over the
// sector levels; approx nu_c(sector) / integral rho^2 for smooth nu
double effective_dimension(const Envelope& env, const Eigen::VectorXd& E,
                           const Dos& dos);

// mean spacing of one parity sector at scaled energy eps, in absolute units
double sector_mean_spacing(const Dos& dos, double eps);

// ---- survival probability ----

// S_P(t) = |sum_k w_k e^{-i E_k t}|^2, weights normalized to sum 1
Eigen::VectorXd survival_probability(const EigenState& st,
                                     const Eigen::VectorXd& ts);

// GOE-filling ensemble average: the envelope decay, the b2 ramp on the mean
// sector spacing D, and the saturation at ipr
Eigen::VectorXd analytic_sp_chaotic(const Envelope& env, double eta, double D,
                                    double ipr, const Eigen::VectorXd& ts);

// hole minimum of the analytic curve: numerical root of its derivative
double thouless_time(const Envelope& env, double eta, double D, double ipr);

// saturation entry time pi nu_c / (4 sqrt(delta)); nu_c is the full density
// of states per unit absolute energy at the envelope center
double relaxation_time(double nu_c, double delta = 0.01);

// ---- regular-regime comb ----

struct RegularLadder {
    double omega1 = 0.0;  // fundamental spacing at the LDOS peak
    double e2 = 0.0;      // anharmonicity of the ladder
    double E_c = 0.0, sigma0 = 0.0;
    double t_d = 0.0;  // omega1 / (sigma0 |e2|), inf for a rigid ladder
};

// dominant-component ladder of a regular-regime state; components below
// keep_fraction * max weight are ignored, and near-degenerate parity doublets
// (splittings under sigma0/20) collapse into single rungs
RegularLadder regular_ladder(const EigenState& st, double keep_fraction = 1e-3);

// Gaussian comb of revivals with decay time t_d
Eigen::VectorXd analytic_sp_regular(const RegularLadder& lad,
                                    const Eigen::VectorXd& ts);

// ---- classical limit ----

struct ClassicalSurvival {
    Eigen::VectorXd ts, sp;  // 4 E[exp(-j D^2(x(t), x0))] over the Wigner cloud
    double asymptote = 0.0;  // running time average at the final time
    long escaped = 0;        // restarted trajectories
};

ClassicalSurvival classical_survival(const Params& p, const ClassicalState& x0,
                                     const Eigen::VectorXd& ts, int n_samples,
                                     std::uint64_t seed);

// fraction of the energy shell explored by the state: 2 S_cl_inf / S_q_inf
double explored_fraction(double classical_asymptote, double quantum_ipr);

// ---- evolution in state space ----

struct EntropyCurves {
    Eigen::VectorXd ts, von_neumann, linear;
};

// entanglement entropies of the reduced spin state along the evolution
EntropyCurves evolve_entropies(const Spectrum& plus, const Spectrum& minus,
                               const EigenState& st, const Eigen::VectorXd& ts);

// <E_k|O|E_k'> over the converged columns of one sector for an operator given
// as a dense matrix in the sector basis
Eigen::MatrixXd eigenbasis_block(const Spectrum& s, const Eigen::MatrixXd& op);

// <psi(t)|O|psi(t)> for a parity-preserving operator with eigenbasis blocks
// O_plus, O_minus (rows/cols follow the retained amplitudes of st)
Eigen::VectorXd observable_evolution(const Eigen::MatrixXd& O_plus,
                                     const Eigen::MatrixXd& O_minus,
                                     const EigenState& st,
                                     const Eigen::VectorXd& ts);

// ---- diagonal ensemble and ergodicity ----

struct ErgodicityReport {
    Eigen::VectorXd w_plus, w_minus;  // diagonal weights (normalized)
    double occupation = 0.0;          // shell Renyi occupation of the ensemble
    double min_gap = 0.0;             // smallest gap among retained levels
    bool degenerate_warning = false;  // min_gap < 1e-10 * bandwidth
};

// infinite-time averaged ensemble of the state and its phase-space occupation
// over the energy shell at eps (Monte Carlo, n_samples shell points)
ErgodicityReport diagonal_ensemble(const Spectrum& plus, const Spectrum& minus,
                                   const EigenState& st, double eps,
                                   int n_samples, std::uint64_t seed,
                                   double alpha = 2.0);

// ---- grids, averages, hole detection ----

// log-spaced times from 1e-2/sigma0 to 10 t_r
Eigen::VectorXd log_time_grid(double sigma0, double t_r, int n);

// centered running mean over a fixed index window
Eigen::VectorXd running_mean(const Eigen::VectorXd& ys, int window = 50);

// running time average (1/t) integral_0^t, trapezoid on the given grid
Eigen::VectorXd running_time_average(const Eigen::VectorXd& ts,
                                     const Eigen::VectorXd& ys);

struct HoleReport {
    double depth = 1.0;  // min of the smoothed post-decay curve over ipr
    double t_min = 0.0;
    bool hole = false;  // depth < 0.7
};

HoleReport correlation_hole(const Eigen::VectorXd& ts, const Eigen::VectorXd& sp,
                            double ipr, double sigma0, int window = 50);

}  // namespace dicke

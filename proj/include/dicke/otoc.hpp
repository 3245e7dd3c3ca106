#pragma once

#include <dicke/quench.hpp>
#include <dicke/spectral.hpp>

#include <Eigen/Dense>

namespace dicke {

// q = (a+a')/sqrt(2) between the two parity eigenbases: rows are levels of
// `row`, columns levels of `col`, both restricted to the converged prefix.
// The sectors must share params and N_max and have opposite parity.
Eigen::MatrixXd q_matrix_cross(const Spectrum& row, const Spectrum& col);

// least-squares fit of ln c against t on the auto-detected growth window:
// from the end of the short-time oscillatory regime (t > pi/omega0) to the
// first crossing of 80% of the saturation value. c is assumed to behave as
// exp(2 lambda_q t) inside the window.
struct LyapunovFit {
    double lambda_q = 0.0;
    double t_lo = 0.0, t_hi = 0.0;  // window actually used
    double r2 = 0.0;
    // false when the curve grows by less than one e-fold across the window
    // (or the window holds fewer than three usable points)
    bool reliable = false;
};

LyapunovFit otoc_growth_rate(const Eigen::VectorXd& ts, const Eigen::VectorXd& c,
                             double saturation, double omega0);

// microcanonical out-of-time-ordered correlator of the commutator [q(t), p]
// for one eigenstate, C_k(t) = sum_k' |b_kk'(t)|^2, built from the q matrix
// elements in the energy eigenbasis. C_k(0) = 1 up to truncation.
struct OtocCurve {
    Eigen::VectorXd ts;
    Eigen::VectorXd c;
    Eigen::VectorXd diag2;   // |b_kk(t)|^2, dominates at very short times
    double asymptote = 0.0;  // closed double-sum infinite-time average;
                             // assumes nondegenerate level differences, so it
                             // is meaningful in the chaotic regime only
    LyapunovFit fit;
};

// k indexes the converged levels of the sector with the given parity
OtocCurve otoc(const Spectrum& plus, const Spectrum& minus, int parity, int k,
               const Eigen::VectorXd& ts);

// wave-packet spreading and Fisher information along the evolution of `st`.
// variance_sum collects the four phase-space variances in classical units
// (sigma_q^2 + sigma_p^2 + sigma_Q^2 + sigma_P^2, each 1/(2j)-scale for a
// coherent state); f_max(t) = 4 max_n <Delta J_n^2>/(2j) from the largest
// eigenvalue of the 3x3 pseudospin covariance matrix. With direction_search
// off the z direction is used instead of the maximizing one.
struct FotocCurves {
    Eigen::VectorXd ts;
    Eigen::VectorXd variance_sum;
    Eigen::VectorXd f_max;
    Eigen::VectorXd f_max_running;  // running time average of f_max
    LyapunovFit fit;                // growth of variance_sum; saturation is
                                    // estimated from the tail of the curve
};

FotocCurves fotoc_qfi(const Spectrum& plus, const Spectrum& minus,
                      const EigenState& st, const Eigen::VectorXd& ts,
                      bool direction_search = true);

}  // namespace dicke

#pragma once

#include <complex>
#include <Eigen/Dense>

#include <dicke/classical.hpp>
#include <dicke/model.hpp>
#include <dicke/spectral.hpp>

namespace dicke {

// Product coherent states |alpha> (x) |z| labelled by a classical phase-space
// point x = (q, p, Q, P): alpha = sqrt(j/2)(q + ip), z = (Q + iP)/sqrt(4 - Q^2 - P^2).
// The Bloch parameter z is measured from the |j, -j> pole, so the south pole
// (Q = P = 0) is z = 0 and the boundary circle Q^2 + P^2 -> 4 is the north pole.

// Geodesic angle between the Bloch vectors of two phase-space points, in [0, pi].
double bloch_angle(const ClassicalState& x1, const ClassicalState& x2);

// D(x1, x2) = sqrt(dq^2 + dp^2 + Theta^2): Euclidean in the bosonic plane plus
// the geodesic angle on the sphere.
double phase_space_distance(const ClassicalState& x1, const ClassicalState& x2);

// |<x1|x2>|^2 = exp(-j/2 (dq^2 + dp^2)) cos^{4j}(Theta/2), and its natural log.
double coherent_overlap_sq(const ClassicalState& x1, const ClassicalState& x2, double j);
double coherent_overlap_log(const ClassicalState& x1, const ClassicalState& x2, double j);

// Wigner function of the coherent state at x0 evaluated at x, Gaussian
// approximation on the sphere: (j/pi)^2 exp(-j D^2(x0, x)).
double wigner_coherent(const ClassicalState& x0, const ClassicalState& x, double j);

// Amplitudes <N, m; x_basis | x> of a product coherent state in the displaced
// basis underlying EffBasis (rows ordered as the basis). Uses the closed form
// with the displaced-oscillator centers alpha_m = -G m and the Bloch overlap
// in the J_x eigenbasis.
Eigen::VectorXcd coherent_efficient(const Params& p, const EffBasis& basis,
                                    const ClassicalState& x);

// Amplitudes in a parity-adapted sector: eta (C_{N,m} + parity (-1)^N C_{N,-m}).
Eigen::VectorXcd coherent_sector(const Params& p, const ParityBasis& basis,
                                 const ClassicalState& x);

// Expansion of |x> over the converged eigenstates of both parity sectors.
// c_k = sum_rows V(row, k) A_p(row). norm2 is the total captured probability;
// the remainder leaked into unconverged or truncated directions.
struct CoherentExpansion {
    Eigen::VectorXcd c_plus;
    Eigen::VectorXcd c_minus;
    double norm2 = 0.0;
};

CoherentExpansion coherent_expand(const Spectrum& plus, const Spectrum& minus,
                                  const ClassicalState& x);

}  // namespace dicke

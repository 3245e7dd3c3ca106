#pragma once
#include <dicke/spectral.hpp>

#include <complex>
#include <utility>
#include <vector>

namespace dicke {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// matrix-free operator actions on full adapted-basis vectors (both parities,
// signed m columns). The boson mode enters through a = A - G Jx, so photon
// operators pick up displacement corrections while A itself stays tridiagonal.
class EffOperators {
 public:
  EffOperators(const Params& p, int N_max);

  const EffBasis& basis() const { return basis_; }
  const Params& params() const { return par_; }

  VectorXcd h(const VectorXcd& v) const;
  VectorXcd num(const VectorXcd& v) const;  // a'a
  VectorXcd jz(const VectorXcd& v) const;
  VectorXcd jx(const VectorXcd& v) const;  // diagonal m
  VectorXcd jx2(const VectorXcd& v) const;
  VectorXcd jy(const VectorXcd& v) const;
  VectorXcd q(const VectorXcd& v) const;  // (a+a')/sqrt(2)
  VectorXcd p(const VectorXcd& v) const;  // (a-a')/(i sqrt(2))

 private:
  Params par_;
  EffBasis basis_;
  Eigen::MatrixXd Dp_;  // boson overlap block for an m -> m+1 hop
  VectorXd hdiag_;      // w (N - G^2 m^2)
};

// ---- entropies and reduced density matrices ----

double shannon_entropy(const VectorXd& probs);

// reduced spin state from z-quantized Fock coefficients C(n, m_z)
MatrixXcd atom_reduced_fock(const MatrixXcd& C);
// same state straight from the adapted basis (x-quantized representation)
MatrixXcd atom_reduced_direct(const Params& p, const EffBasis& basis,
                              const VectorXcd& psi);
MatrixXcd rotate_x_to_z(const MatrixXcd& rho_x);

double entropy_of_density(const MatrixXcd& rho);
double linear_entropy(const MatrixXcd& rho);  // 1 - Tr rho^2

struct Entanglement {
  double von_neumann;
  double linear;
};
// from Fock coefficients; rejects states whose norm is off by > 1e-6
Entanglement atomic_entanglement(const MatrixXcd& C);

double participation_ratio(const VectorXcd& c);  // 1 / sum |c_k|^4

// ---- eigenstate-resolved diagnostics ----

enum class NamedObservable { Jz, Jx2, PhotonNumber, ExcitedAtoms };

// (scaled energy, expectation) for converged levels with stored vectors
std::vector<std::pair<double, double>> peres_values(const Spectrum& s,
                                                    NamedObservable which);

struct MicDeviation {
  double mean_dev;  // sum |O_k - O_mic| / (n |O_mic|)
  double extremal;  // (max - min) / |O_mic|
};
MicDeviation microcanonical_deviation(const std::vector<double>& values);

}  // namespace dicke

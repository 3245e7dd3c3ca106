#pragma once
#include <dicke/params.hpp>

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace dicke {

// ladder amplitudes; arguments in doubled units so half-integer spins stay exact
inline double cplus(int two_j, int two_m) {
  return 0.5 * std::sqrt(double(two_j) * (two_j + 2) - double(two_m) * (two_m + 2));
}
inline double cminus(int two_j, int two_m) {
  return 0.5 * std::sqrt(double(two_j) * (two_j + 2) - double(two_m) * (two_m - 2));
}

// ---- plain Fock basis |n> x |j,m_z>, parity (-1)^{n+m+j} diagonal ----

struct FockBasis {
  int two_j = 0;
  int n_max = 0;
  int parity = 0;                          // 0: full space, else +1/-1 sector
  std::vector<std::pair<int, int>> states; // (two_m, n), m-major

  static FockBasis full(const Params& p, int n_max);
  static FockBasis sector(const Params& p, int n_max, int parity);
  int dim() const { return static_cast<int>(states.size()); }
};

Eigen::MatrixXd build_hamiltonian(const Params& p, const FockBasis& basis);

// boson cutoff bound covering the ground-state condensate plus tail margin
int fock_cutoff(const Params& p);

// ---- adapted basis |N, alpha_m> x |j,m_x>, alpha_m = -G m ----
// Requires the isotropic model. Diagonal part w(N - G^2 m^2); the w0 Jz term
// hops m by one unit and displaces the boson by -+G.

struct EffBasis {
  int two_j = 0;
  int N_max = 0;
  EffBasis(int two_j_, int N_max_) : two_j(two_j_), N_max(N_max_) {}
  int dim() const { return (two_j + 1) * (N_max + 1); }
  int index(int two_m, int N) const {
    return ((two_m + two_j) / 2) * (N_max + 1) + N;
  }
};

// parity sector of the adapted basis: |N,m;p> ~ |N,m> + p(-1)^N |N,-m>,
// m >= 0, with m = 0 members present only when (-1)^N == p.
struct ParityBasis {
  int two_j = 0;
  int N_max = 0;
  int parity = +1;
  std::vector<int> two_ms;                 // ascending, nonnegative
  std::vector<int> offsets;                // block start per two_ms entry
  std::vector<std::pair<int, int>> states; // (two_m, N)

  static ParityBasis make(const Params& p, int N_max, int parity);
  int dim() const { return static_cast<int>(states.size()); }
  int block_size(std::size_t bi) const {
    std::size_t next = bi + 1 < two_ms.size() ? offsets[bi + 1] : states.size();
    return static_cast<int>(next - offsets[bi]);
  }
  // position of (two_m, N) inside the sector, -1 if absent
  int index(int two_m, int N) const;
};

Eigen::MatrixXd build_hamiltonian(const Params& p, const ParityBasis& basis);
Eigen::MatrixXd build_jz(const Params& p, const ParityBasis& basis);
Eigen::MatrixXd build_num(const Params& p, const ParityBasis& basis);
Eigen::VectorXd jx_diagonal(const ParityBasis& basis); // Jx = m_x, diagonal

// parity-odd boson quadrature q = (a+a')/sqrt(2); couples the two sectors
Eigen::MatrixXd build_q_cross(const Params& p, const ParityBasis& row,
                              const ParityBasis& col);

// embed a sector vector into the full signed-m basis
Eigen::VectorXcd sector_to_full(const ParityBasis& sec, const EffBasis& full,
                                const Eigen::VectorXcd& v);

// ---- frame change back to the z-quantized Fock basis ----

// R_{m_z, m_x} = <m_z| exp(-i pi Jy / 2) |m_x>, real orthogonal
Eigen::MatrixXd spin_rotation_half_pi(int two_j);

// C(n, m_z) Fock coefficients of a full-basis adapted vector
Eigen::MatrixXcd efficient_to_fock(const Params& p, const EffBasis& basis,
                                   const Eigen::VectorXcd& psi, int n_max);
int conversion_n_max(const Params& p, int N_max);

}  // namespace dicke

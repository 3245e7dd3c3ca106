#include <dicke/model.hpp>
#include <dicke/overlap.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace dicke {

namespace {

int fock_parity(int two_j, int two_m, int n) {
  return ((n + (two_m + two_j) / 2) % 2 == 0) ? +1 : -1;
}

}  // namespace

FockBasis FockBasis::full(const Params& p, int n_max) {
  p.validate();
  FockBasis b;
  b.two_j = p.two_j();
  b.n_max = n_max;
  b.parity = 0;
  b.states.reserve(std::size_t(b.two_j + 1) * (n_max + 1));
  for (int two_m = -b.two_j; two_m <= b.two_j; two_m += 2)
    for (int n = 0; n <= n_max; ++n) b.states.emplace_back(two_m, n);
  return b;
}

FockBasis FockBasis::sector(const Params& p, int n_max, int parity) {
  FockBasis b = full(p, n_max);
  b.parity = parity;
  std::erase_if(b.states, [&](std::pair<int, int> s) {
    return fock_parity(b.two_j, s.first, s.second) != parity;
  });
  return b;
}

Eigen::MatrixXd build_hamiltonian(const Params& p, const FockBasis& basis) {
  int tj = basis.two_j, n_max = basis.n_max;
  std::vector<int> pos(std::size_t(tj + 1) * (n_max + 1), -1);
  auto slot = [&](int two_m, int n) -> int& {
    return pos[std::size_t((two_m + tj) / 2) * (n_max + 1) + n];
  };
  for (int i = 0; i < basis.dim(); ++i)
    slot(basis.states[i].first, basis.states[i].second) = i;

  double isq = 1.0 / std::sqrt(double(tj));  // 1/sqrt(N), N = 2j emitters
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
  for (int k = 0; k < basis.dim(); ++k) {
    auto [two_m, n] = basis.states[k];
    H(k, k) = p.omega * n + p.omega0 * (two_m / 2.0);
    auto add = [&](int two_mt, int nt, double amp) {
      if (nt < 0 || nt > n_max || two_mt < -tj || two_mt > tj) return;
      int i = slot(two_mt, nt);
      if (i >= 0) H(i, k) += amp;
    };
    double sp = std::sqrt(double(n + 1)), sm = std::sqrt(double(n));
    add(two_m - 2, n + 1, p.gminus * isq * sp * cminus(tj, two_m));
    add(two_m + 2, n - 1, p.gminus * isq * sm * cplus(tj, two_m));
    add(two_m + 2, n + 1, p.gplus * isq * sp * cplus(tj, two_m));
    add(two_m - 2, n - 1, p.gplus * isq * sm * cminus(tj, two_m));
  }
  return H;
}

int fock_cutoff(const Params& p) {
  p.validate();
  double g = std::max(std::abs(p.gminus), std::abs(p.gplus));
  double gc = p.gc();
  double base = 2.0 * p.j * g * g / (p.omega * p.omega);
  if (g > gc) {
    double r = gc / g;
    double M = base * (1.0 - r * r * r * r);
    return int(std::ceil(M * (1.0 + 3.0 / std::sqrt(M))));
  }
  return int(std::ceil(base + 3.0 * std::sqrt(base) + 10.0));
}

ParityBasis ParityBasis::make(const Params& p, int N_max, int parity) {
  p.validate();
  (void)p.g();  // adapted basis is built for the isotropic model only
  ParityBasis b;
  b.two_j = p.two_j();
  b.N_max = N_max;
  b.parity = parity;
  int start = (b.two_j % 2) ? 1 : 0;
  for (int two_m = start; two_m <= b.two_j; two_m += 2) {
    b.two_ms.push_back(two_m);
    b.offsets.push_back(int(b.states.size()));
    for (int N = 0; N <= N_max; ++N) {
      // |N,0> is its own parity partner: keep it only in its (-1)^N sector
      if (two_m == 0 && ((N % 2 == 0) ? +1 : -1) != parity) continue;
      b.states.emplace_back(two_m, N);
    }
  }
  return b;
}

int ParityBasis::index(int two_m, int N) const {
  if (two_m < two_ms.front() || two_m > two_ms.back() || N < 0 || N > N_max)
    return -1;
  int bi = (two_m - two_ms.front()) / 2;
  if (two_m == 0) {
    if (((N % 2 == 0) ? +1 : -1) != parity) return -1;
    return offsets[bi] + N / 2;
  }
  return offsets[bi] + N;
}

namespace {

using BlockFn = std::function<Eigen::MatrixXd(int, int)>;

// Sector matrix of an operator given by its full-space m-blocks.
// Basis vectors are eta (|N,m> + p(-1)^N |N,-m>), so the element is
// 2 eta' eta [ B(m',m)(N',N) + p_ket (-1)^N B(m',-m)(N',N) ].
Eigen::MatrixXd assemble(const ParityBasis& row, const ParityBasis& col,
                         const BlockFn& bf) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(row.dim(), col.dim());
  for (std::size_t br = 0; br < row.two_ms.size(); ++br) {
    for (std::size_t bc = 0; bc < col.two_ms.size(); ++bc) {
      int tmp = row.two_ms[br], tm = col.two_ms[bc];
      Eigen::MatrixXd Bd = bf(tmp, tm);
      Eigen::MatrixXd Bx = bf(tmp, -tm);
      if (Bd.size() == 0 && Bx.size() == 0) continue;
      double etap = (tmp == 0) ? 0.5 : M_SQRT1_2;
      double eta = (tm == 0) ? 0.5 : M_SQRT1_2;
      double f = 2.0 * etap * eta;
      for (int b = 0; b < col.block_size(bc); ++b) {
        int k = col.offsets[bc] + b;
        int N = col.states[k].second;
        double cross_sign = col.parity * ((N % 2) ? -1.0 : 1.0);
        for (int a = 0; a < row.block_size(br); ++a) {
          int i = row.offsets[br] + a;
          int Np = row.states[i].second;
          double v = 0.0;
          if (Bd.size()) v += Bd(Np, N);
          if (Bx.size()) v += cross_sign * Bx(Np, N);
          if (v != 0.0) A(i, k) = f * v;
        }
      }
    }
  }
  return A;
}

void require_match(const Params& p, const ParityBasis& b) {
  if (p.two_j() != b.two_j)
    throw std::logic_error("basis built for a different spin length");
}

}  // namespace

Eigen::MatrixXd build_hamiltonian(const Params& p, const ParityBasis& basis) {
  require_match(p, basis);
  double G = p.G(), w = p.omega, w0 = p.omega0;
  int n1 = basis.N_max + 1, tj = basis.two_j;
  Eigen::MatrixXd Dp = displacement_matrix(G, n1, n1);
  Eigen::MatrixXd Dm = Dp.transpose();
  BlockFn bf = [&](int tmp, int tm) -> Eigen::MatrixXd {
    if (tmp == tm) {
      Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n1, n1);
      double m2 = 0.25 * tm * tm;
      for (int N = 0; N < n1; ++N) B(N, N) = w * (N - G * G * m2);
      return B;
    }
    if (tmp == tm + 2) return (-0.5 * w0 * cplus(tj, tm)) * Dp;
    if (tmp == tm - 2) return (-0.5 * w0 * cminus(tj, tm)) * Dm;
    return Eigen::MatrixXd();
  };
  return assemble(basis, basis, bf);
}

Eigen::MatrixXd build_jz(const Params& p, const ParityBasis& basis) {
  require_match(p, basis);
  double G = p.G();
  int n1 = basis.N_max + 1, tj = basis.two_j;
  Eigen::MatrixXd Dp = displacement_matrix(G, n1, n1);
  Eigen::MatrixXd Dm = Dp.transpose();
  BlockFn bf = [&](int tmp, int tm) -> Eigen::MatrixXd {
    if (tmp == tm + 2) return (-0.5 * cplus(tj, tm)) * Dp;
    if (tmp == tm - 2) return (-0.5 * cminus(tj, tm)) * Dm;
    return Eigen::MatrixXd();
  };
  return assemble(basis, basis, bf);
}

Eigen::MatrixXd build_num(const Params& p, const ParityBasis& basis) {
  require_match(p, basis);
  double G = p.G();
  int n1 = basis.N_max + 1;
  BlockFn bf = [&](int tmp, int tm) -> Eigen::MatrixXd {
    if (tmp != tm) return Eigen::MatrixXd();
    double m = 0.5 * tm;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n1, n1);
    for (int N = 0; N < n1; ++N) {
      B(N, N) = N + G * G * m * m;
      if (N + 1 < n1) {
        double v = -G * m * std::sqrt(double(N + 1));
        B(N + 1, N) = v;
        B(N, N + 1) = v;
      }
    }
    return B;
  };
  return assemble(basis, basis, bf);
}

Eigen::VectorXd jx_diagonal(const ParityBasis& basis) {
  Eigen::VectorXd d(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) d(i) = 0.5 * basis.states[i].first;
  return d;
}

Eigen::MatrixXd build_q_cross(const Params& p, const ParityBasis& row,
                              const ParityBasis& col) {
  require_match(p, row);
  require_match(p, col);
  if (row.parity != -col.parity)
    throw std::logic_error("q connects opposite parity sectors");
  double G = p.G();
  int n1 = row.N_max + 1;
  BlockFn bf = [&](int tmp, int tm) -> Eigen::MatrixXd {
    if (tmp != tm) return Eigen::MatrixXd();
    double m = 0.5 * tm;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n1, n1);
    for (int N = 0; N < n1; ++N) {
      B(N, N) = -std::sqrt(2.0) * G * m;
      if (N + 1 < n1) {
        double v = std::sqrt(0.5 * (N + 1));
        B(N + 1, N) = v;
        B(N, N + 1) = v;
      }
    }
    return B;
  };
  return assemble(row, col, bf);
}

Eigen::VectorXcd sector_to_full(const ParityBasis& sec, const EffBasis& full,
                                const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(full.dim());
  for (int i = 0; i < sec.dim(); ++i) {
    auto [two_m, N] = sec.states[i];
    if (two_m == 0) {
      out(full.index(0, N)) = v(i);
      continue;
    }
    double sgn = sec.parity * ((N % 2) ? -1.0 : 1.0);
    out(full.index(two_m, N)) = M_SQRT1_2 * v(i);
    out(full.index(-two_m, N)) = M_SQRT1_2 * sgn * v(i);
  }
  return out;
}

Eigen::MatrixXd spin_rotation_half_pi(int two_j) {
  int d = two_j + 1;
  Eigen::MatrixXcd Jy = Eigen::MatrixXcd::Zero(d, d);
  const std::complex<double> I(0.0, 1.0);
  for (int im = 0; im + 1 < d; ++im) {
    int two_m = -two_j + 2 * im;
    double c = cplus(two_j, two_m);
    Jy(im + 1, im) = c / (2.0 * I);
    Jy(im, im + 1) = -c / (2.0 * I);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Jy);
  Eigen::VectorXcd ph(d);
  for (int k = 0; k < d; ++k)
    ph(k) = std::exp(-I * (M_PI / 2.0) * es.eigenvalues()(k));
  Eigen::MatrixXcd R =
      es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  return R.real();
}

int conversion_n_max(const Params& p, int N_max) {
  double reach = p.G() * p.j + std::sqrt(double(N_max));
  return int(std::ceil(reach * reach + 8.0 * reach + 20.0));
}

Eigen::MatrixXcd efficient_to_fock(const Params& p, const EffBasis& basis,
                                   const Eigen::VectorXcd& psi, int n_max) {
  double G = p.G();
  int N1 = basis.N_max + 1, cols = basis.two_j + 1;
  Eigen::MatrixXcd phi(n_max + 1, cols);  // boson coefficients per m_x column
  for (int im = 0; im < cols; ++im) {
    double m = 0.5 * (-basis.two_j + 2 * im);
    Eigen::MatrixXd B = displacement_matrix(-G * m, n_max + 1, N1);
    phi.col(im) = B * psi.segment(std::ptrdiff_t(im) * N1, N1);
  }
  Eigen::MatrixXd R = spin_rotation_half_pi(basis.two_j);
  return phi * R.transpose();  // C(n, m_z) = sum_mx R(m_z,m_x) phi(n,m_x)
}

}  // namespace dicke

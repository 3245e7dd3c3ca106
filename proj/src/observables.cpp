#include <dicke/observables.hpp>
#include <dicke/overlap.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace dicke {

namespace {

// real matrix (or expression) times complex segment
template <class Mat, class Vec>
VectorXcd rmul(const Mat& M, const Vec& v) {
  Eigen::VectorXd re(v.size()), im(v.size());
  for (int i = 0; i < v.size(); ++i) {
    re(i) = v(i).real();
    im(i) = v(i).imag();
  }
  Eigen::VectorXd a = M * re, b = M * im;
  VectorXcd out(a.size());
  out.real() = a;
  out.imag() = b;
  return out;
}

}  // namespace

EffOperators::EffOperators(const Params& p, int N_max)
    : par_(p), basis_(p.two_j(), N_max) {
  double G = p.G();
  Dp_ = displacement_matrix(G, N_max + 1, N_max + 1);
  hdiag_.resize(basis_.dim());
  for (int im = 0; im <= basis_.two_j; ++im) {
    double m = 0.5 * (-basis_.two_j + 2 * im);
    for (int N = 0; N <= N_max; ++N)
      hdiag_(im * (N_max + 1) + N) = p.omega * (N - G * G * m * m);
  }
}

VectorXcd EffOperators::jz(const VectorXcd& v) const {
  int N1 = basis_.N_max + 1, tj = basis_.two_j;
  VectorXcd out = VectorXcd::Zero(v.size());
  for (int im = 0; im <= tj; ++im) {
    int two_m = -tj + 2 * im;
    auto seg = v.segment(std::ptrdiff_t(im) * N1, N1);
    if (im + 1 <= tj)  // m -> m+1 hop displaces the boson by +G
      out.segment(std::ptrdiff_t(im + 1) * N1, N1) +=
          (-0.5 * cplus(tj, two_m)) * rmul(Dp_, seg);
    if (im - 1 >= 0)
      out.segment(std::ptrdiff_t(im - 1) * N1, N1) +=
          (-0.5 * cminus(tj, two_m)) * rmul(Dp_.transpose(), seg);
  }
  return out;
}

VectorXcd EffOperators::jy(const VectorXcd& v) const {
  int N1 = basis_.N_max + 1, tj = basis_.two_j;
  const std::complex<double> ihalf(0.0, -0.5);  // 1/(2i)
  VectorXcd out = VectorXcd::Zero(v.size());
  for (int im = 0; im <= tj; ++im) {
    int two_m = -tj + 2 * im;
    auto seg = v.segment(std::ptrdiff_t(im) * N1, N1);
    if (im + 1 <= tj)
      out.segment(std::ptrdiff_t(im + 1) * N1, N1) +=
          ihalf * cplus(tj, two_m) * rmul(Dp_, seg);
    if (im - 1 >= 0)
      out.segment(std::ptrdiff_t(im - 1) * N1, N1) -=
          ihalf * cminus(tj, two_m) * rmul(Dp_.transpose(), seg);
  }
  return out;
}

VectorXcd EffOperators::h(const VectorXcd& v) const {
  VectorXcd out = par_.omega0 * jz(v);
  out.array() += hdiag_.array() * v.array();
  return out;
}

VectorXcd EffOperators::jx(const VectorXcd& v) const {
  int N1 = basis_.N_max + 1, tj = basis_.two_j;
  VectorXcd out(v.size());
  for (int im = 0; im <= tj; ++im) {
    double m = 0.5 * (-tj + 2 * im);
    out.segment(std::ptrdiff_t(im) * N1, N1) =
        m * v.segment(std::ptrdiff_t(im) * N1, N1);
  }
  return out;
}

VectorXcd EffOperators::jx2(const VectorXcd& v) const {
  int N1 = basis_.N_max + 1, tj = basis_.two_j;
  VectorXcd out(v.size());
  for (int im = 0; im <= tj; ++im) {
    double m = 0.5 * (-tj + 2 * im);
    out.segment(std::ptrdiff_t(im) * N1, N1) =
        m * m * v.segment(std::ptrdiff_t(im) * N1, N1);
  }
  return out;
}

VectorXcd EffOperators::num(const VectorXcd& v) const {
  int N1 = basis_.N_max + 1, tj = basis_.two_j;
  double G = par_.G();
  VectorXcd out(v.size());
  for (int im = 0; im <= tj; ++im) {
    double m = 0.5 * (-tj + 2 * im);
    auto seg = v.segment(std::ptrdiff_t(im) * N1, N1);
    auto o = out.segment(std::ptrdiff_t(im) * N1, N1);
    for (int N = 0; N < N1; ++N) {
      std::complex<double> acc = (N + G * G * m * m) * seg(N);
      if (N > 0) acc -= G * m * std::sqrt(double(N)) * seg(N - 1);
      if (N + 1 < N1) acc -= G * m * std::sqrt(double(N + 1)) * seg(N + 1);
      o(N) = acc;
    }
  }
  return out;
}

VectorXcd EffOperators::q(const VectorXcd& v) const {
  int N1 = basis_.N_max + 1, tj = basis_.two_j;
  double G = par_.G();
  const double s2 = std::sqrt(0.5);
  VectorXcd out(v.size());
  for (int im = 0; im <= tj; ++im) {
    double m = 0.5 * (-tj + 2 * im);
    auto seg = v.segment(std::ptrdiff_t(im) * N1, N1);
    auto o = out.segment(std::ptrdiff_t(im) * N1, N1);
    for (int N = 0; N < N1; ++N) {
      std::complex<double> acc = -std::sqrt(2.0) * G * m * seg(N);
      if (N > 0) acc += s2 * std::sqrt(double(N)) * seg(N - 1);
      if (N + 1 < N1) acc += s2 * std::sqrt(double(N + 1)) * seg(N + 1);
      o(N) = acc;
    }
  }
  return out;
}

VectorXcd EffOperators::p(const VectorXcd& v) const {
  int N1 = basis_.N_max + 1, tj = basis_.two_j;
  const std::complex<double> is2(0.0, std::sqrt(0.5));
  VectorXcd out(v.size());
  for (int im = 0; im <= tj; ++im) {
    auto seg = v.segment(std::ptrdiff_t(im) * N1, N1);
    auto o = out.segment(std::ptrdiff_t(im) * N1, N1);
    for (int N = 0; N < N1; ++N) {
      std::complex<double> acc = 0.0;
      if (N + 1 < N1) acc += std::sqrt(double(N + 1)) * seg(N + 1);
      if (N > 0) acc -= std::sqrt(double(N)) * seg(N - 1);
      o(N) = -is2 * acc;  // (A - A')/(i sqrt 2)
    }
  }
  return out;
}

double shannon_entropy(const VectorXd& probs) {
  double s = 0.0;
  for (int i = 0; i < probs.size(); ++i) {
    double p = probs(i);
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

MatrixXcd atom_reduced_fock(const MatrixXcd& C) {
  // rho(m', m) = sum_n C(n, m') conj(C(n, m))
  return C.transpose() * C.conjugate();
}

MatrixXcd atom_reduced_direct(const Params& p, const EffBasis& basis,
                              const VectorXcd& psi) {
  int tj = basis.two_j, N1 = basis.N_max + 1;
  double G = p.G();
  // boson overlap blocks between displaced towers, one per m-distance
  std::vector<Eigen::MatrixXd> D(tj + 1);
  for (int k = 0; k <= tj; ++k) D[k] = displacement_matrix(G * k, N1, N1);

  MatrixXcd rho(tj + 1, tj + 1);
  for (int a = 0; a <= tj; ++a) {    // row m'' index
    for (int b = a; b <= tj; ++b) {  // column m' index
      auto va = psi.segment(std::ptrdiff_t(a) * N1, N1);
      auto vb = psi.segment(std::ptrdiff_t(b) * N1, N1);
      // rho(m'', m') = psi(:,m')^H D(G(m'-m'')) psi(:,m''), rows are m''
      VectorXcd Dva = rmul(D[b - a], va);
      std::complex<double> v = vb.dot(Dva);
      rho(a, b) = v;
      rho(b, a) = std::conj(v);
    }
  }
  return rho;
}

MatrixXcd rotate_x_to_z(const MatrixXcd& rho_x) {
  Eigen::MatrixXd R = spin_rotation_half_pi(int(rho_x.rows()) - 1);
  return R * rho_x * R.transpose();
}

double entropy_of_density(const MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()(i);
    if (l > 1e-14) s -= l * std::log(l);
  }
  return s;
}

double linear_entropy(const MatrixXcd& rho) {
  return 1.0 - (rho * rho).trace().real();
}

Entanglement atomic_entanglement(const MatrixXcd& C) {
  double norm = C.norm();
  if (std::abs(norm - 1.0) > 1e-6)
    throw NumericalError("entanglement input state norm off by " +
                         std::to_string(std::abs(norm - 1.0)));
  MatrixXcd rho = atom_reduced_fock(C);
  return {entropy_of_density(rho), linear_entropy(rho)};
}

double participation_ratio(const VectorXcd& c) {
  double s4 = 0.0;
  for (int i = 0; i < c.size(); ++i) {
    double a2 = std::norm(c(i));
    s4 += a2 * a2;
  }
  return 1.0 / s4;
}

std::vector<std::pair<double, double>> peres_values(const Spectrum& s,
                                                    NamedObservable which) {
  ParityBasis basis = ParityBasis::make(s.params, s.N_max, s.parity);
  Eigen::MatrixXd O;
  Eigen::VectorXd diag;
  bool diagonal = false;
  switch (which) {
    case NamedObservable::Jz:
      O = build_jz(s.params, basis);
      break;
    case NamedObservable::PhotonNumber:
      O = build_num(s.params, basis);
      break;
    case NamedObservable::ExcitedAtoms:  // Jz + j
      O = build_jz(s.params, basis);
      O.diagonal().array() += s.params.j;
      break;
    case NamedObservable::Jx2: {
      diag = jx_diagonal(basis).array().square();
      diagonal = true;
      break;
    }
  }
  int ncols = std::min<int>(s.converged_prefix, int(s.vectors.cols()));
  std::vector<std::pair<double, double>> out;
  out.reserve(ncols);
  for (int k = 0; k < ncols; ++k) {
    if (!s.converged[k]) continue;
    auto v = s.vectors.col(k);
    double val = diagonal ? double(v.cwiseAbs2().dot(diag)) : v.dot(O * v);
    out.emplace_back(s.scaled(k), val);
  }
  return out;
}

MicDeviation microcanonical_deviation(const std::vector<double>& values) {
  if (values.size() < 2)
    throw std::logic_error("deviation needs at least two states");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= double(values.size());
  double lo = values[0], hi = values[0], dev = 0.0;
  for (double v : values) {
    dev += std::abs(v - mean);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  MicDeviation out{};
  if (mean == 0.0) {
    out.mean_dev = std::nan("");
    out.extremal = std::nan("");
    return out;
  }
  out.mean_dev = dev / (double(values.size()) * std::abs(mean));
  out.extremal = (hi - lo) / std::abs(mean);
  return out;
}

}  // namespace dicke

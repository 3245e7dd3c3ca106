#include <dicke/overlap.hpp>

#include <cmath>
#include <limits>

namespace dicke {

namespace {

// log|L_n^(a)(x)| and sign, by the standard three-term recurrence with
// magnitude renormalization; a >= 0 integer, x >= 0.
void laguerre_log(int n, int a, double x, double& log_mag, double& sign) {
  if (n == 0) {
    log_mag = 0.0;
    sign = 1.0;
    return;
  }
  double lm1 = 1.0;             // L_0
  double l = 1.0 + a - x;       // L_1
  double scale = 0.0;           // accumulated log of removed magnitude
  for (int k = 2; k <= n; ++k) {
    double next = ((2.0 * k - 1.0 + a - x) * l - (k - 1.0 + a) * lm1) / k;
    lm1 = l;
    l = next;
    double m = std::max(std::abs(l), std::abs(lm1));
    if (m > 1e100) {
      l /= m;
      lm1 /= m;
      scale += std::log(m);
    }
  }
  if (l == 0.0) {
    log_mag = -std::numeric_limits<double>::infinity();
    sign = 1.0;
    return;
  }
  log_mag = scale + std::log(std::abs(l));
  sign = (l > 0) ? 1.0 : -1.0;
}

}  // namespace

double displaced_fock_overlap(int np, int n, double dx) {
  if (dx == 0.0) return np == n ? 1.0 : 0.0;
  if (np < n) {
    // <np|D(dx)|n> = <n|D(-dx)|np>
    std::swap(np, n);
    dx = -dx;
  }
  int d = np - n;
  double x = dx * dx;
  double lmag, lsign;
  laguerre_log(n, d, x, lmag, lsign);
  double logv = 0.5 * (std::lgamma(n + 1) - std::lgamma(np + 1)) +
                d * std::log(std::abs(dx)) - 0.5 * x + lmag;
  double sign = lsign * ((dx < 0 && (d % 2)) ? -1.0 : 1.0);
  return sign * std::exp(logv);
}

Eigen::MatrixXd displacement_matrix(double beta, int rows, int cols) {
  Eigen::MatrixXd D(rows, cols);
  if (beta == 0.0) {
    D.setZero();
    for (int i = 0; i < std::min(rows, cols); ++i) D(i, i) = 1.0;
    return D;
  }
  // Walk diagonals q = N + a, a >= 0, carrying the L_k^(a)(x) three-term
  // recurrence in k jointly with the log of the prefactor sqrt(k!/(k+a)!) b^a
  // e^{-x/2}. No cross-column coupling, so no cancellation buildup; the q < N
  // triangle follows from D_{q,N}(b) = (-1)^{q+N} D_{N,q}(b), and b < 0 flips
  // signs by parity.
  double b = std::abs(beta);
  double x = b * b;
  int diag_max = std::max(rows, cols);
  for (int a = 0; a < diag_max; ++a) {
    int kmax = std::min(cols - 1, rows - 1 - a);  // entries (q,N) = (k+a, k)
    int kmax_mirror = std::min(rows - 1, cols - 1 - a);
    int klim = std::max(kmax, kmax_mirror);
    if (klim < 0) continue;
    double lpref = -0.5 * std::lgamma(a + 1.0) + a * std::log(b) - 0.5 * x;
    double lkm1 = 0.0, lk = 1.0;  // L_{-1} unused, L_0 = 1
    double lscale = 0.0;
    for (int k = 0; k <= klim; ++k) {
      if (k > 0) {
        double next = ((2.0 * k - 1.0 + a - x) * lk - (k - 1.0 + a) * lkm1) / k;
        lkm1 = lk;
        lk = next;
        double m = std::max(std::abs(lk), std::abs(lkm1));
        if (m > 1e100) {
          lk /= m;
          lkm1 /= m;
          lscale += std::log(m);
        }
        lpref += 0.5 * (std::log(double(k)) - std::log(double(k + a)));
      }
      double v = (lk == 0.0) ? 0.0
                             : (lk > 0 ? 1.0 : -1.0) * std::exp(lpref + lscale + std::log(std::abs(lk)));
      if (k <= kmax) D(k + a, k) = v;
      if (a > 0 && k <= kmax_mirror) D(k, k + a) = ((a % 2) ? -v : v);
    }
  }
  if (beta < 0)
    for (int N = 0; N < cols; ++N)
      for (int q = (N % 2) ? 0 : 1; q < rows; q += 2) D(q, N) = -D(q, N);
  return D;
}

}  // namespace dicke

#include <dicke/dos.hpp>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dicke {

namespace {

const bool handler_off = [] {
  gsl_set_error_handler_off();
  return true;
}();

struct Integrand {
  double x;    // eps / w0
  double rc2;  // (gc/g)^2
};

double angle_fraction(double xi, void* raw) {
  auto* c = static_cast<const Integrand*>(raw);
  double den = 1.0 - xi * xi;
  if (den <= 0.0) return 0.0;
  double a2 = c->rc2 * 2.0 * (xi - c->x) / den;
  if (a2 <= 0.0) return M_PI / 2.0;
  if (a2 >= 1.0) return 0.0;
  return std::acos(std::sqrt(a2));
}

double qags(Integrand c, double a, double b) {
  if (b <= a) return 0.0;
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(256);
  gsl_function F;
  F.function = &angle_fraction;
  F.params = &c;
  double r = 0.0, abserr = 0.0;
  int rc = gsl_integration_qags(&F, a, b, 1e-11, 1e-9, 256, w, &r, &abserr);
  gsl_integration_workspace_free(w);
  if (rc != 0 && rc != GSL_EROUND)
    throw NumericalError("density-of-states quadrature failed");
  return r;
}

}  // namespace

struct Dos::SplineImpl {
  gsl_interp_accel* acc = nullptr;
  gsl_spline* sp = nullptr;
  ~SplineImpl() {
    if (sp) gsl_spline_free(sp);
    if (acc) gsl_interp_accel_free(acc);
  }
};

double Dos::nu(double eps) const {
  const double w0 = p_.omega0;
  if (eps <= eps_min_) return 0.0;
  if (eps >= w0) return plateau();

  double g = p_.g(), gc = p_.gc();
  double x = eps / w0;
  Integrand c{x, (gc / g) * (gc / g)};

  // xi where the angle closes: xi^2 + B xi - (B x + 1) = 0, B = 2 gc^2/g^2
  double B = 2.0 * c.rc2;
  double disc = std::sqrt(B * B + 4.0 * B * x + 4.0);
  double xi_hi = std::min(1.0, 0.5 * (-B + disc));

  double val;
  if (eps < -w0) {
    // double-well branch, exists only for superradiant coupling
    double xi_lo = std::max(-1.0, 0.5 * (-B - disc));
    val = qags(c, xi_lo, xi_hi) / M_PI;
  } else {
    val = 0.5 * (1.0 + x) + qags(c, x, xi_hi) / M_PI;
  }
  return plateau() * val;
}

Dos Dos::make(const Params& p) {
  p.validate();
  Dos d;
  d.p_ = p;
  d.eps_min_ = scaled_ground_energy(p);

  // cumulative table with exact knots at the branch boundaries
  const double w0 = p.omega0;
  std::vector<double> grid;
  auto add_piece = [&](double a, double b, int n) {
    for (int i = (grid.empty() ? 0 : 1); i <= n; ++i)
      grid.push_back(a + (b - a) * i / n);
    if (grid.empty()) grid.push_back(a);
  };
  if (d.eps_min_ < -w0) {
    grid.push_back(d.eps_min_);
    add_piece(d.eps_min_, -w0, 1200);
    add_piece(-w0, w0, 2000);
  } else {
    grid.push_back(-w0);
    add_piece(-w0, w0, 2000);
  }

  std::vector<double> cum(grid.size(), 0.0);
  double prev_nu = d.nu(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double cur_nu = d.nu(grid[i]);
    cum[i] = cum[i - 1] + 0.5 * (prev_nu + cur_nu) * (grid[i] - grid[i - 1]);
    prev_nu = cur_nu;
  }
  d.grid_ = std::move(grid);
  d.cum_ = std::move(cum);

  auto impl = std::make_shared<SplineImpl>();
  impl->acc = gsl_interp_accel_alloc();
  impl->sp = gsl_spline_alloc(gsl_interp_cspline, d.grid_.size());
  if (gsl_spline_init(impl->sp, d.grid_.data(), d.cum_.data(),
                      d.grid_.size()) != 0)
    throw NumericalError("cumulative level-count spline failed");
  d.spline_ = std::move(impl);
  return d;
}

double Dos::cumulative(double eps) const {
  if (eps <= eps_min_) return 0.0;
  double top = grid_.back();  // == w0
  if (eps >= top) return cum_.back() + plateau() * (eps - top);
  return gsl_spline_eval(spline_->sp, eps, spline_->acc);
}

}  // namespace dicke

#pragma once
#include <dicke/params.hpp>

#include <memory>
#include <vector>

namespace dicke {

// classical ground energy per spin; -w0 in the normal phase, lower beyond
inline double scaled_ground_energy(const Params& p) {
  double r = p.g() / p.gc();
  if (r <= 1.0) return -p.omega0;
  return -0.5 * p.omega0 * (r * r + 1.0 / (r * r));
}

// semiclassical density of states in scaled energy eps = E/j, both parity
// sectors together. Piecewise: a double-well branch below -w0 (superradiant
// coupling only), a mixed branch up to +w0, and a flat plateau 2j^2/w above.
class Dos {
 public:
  static Dos make(const Params& p);

  double nu(double eps) const;         // states per unit eps, full spectrum
  double nu_sector(double eps) const { return 0.5 * nu(eps); }
  double cumulative(double eps) const; // level count below eps (spline)
  double plateau() const { return 2.0 * p_.j * p_.j / p_.omega; }
  double eps_min() const { return eps_min_; }
  const Params& params() const { return p_; }

 private:
  Params p_;
  double eps_min_ = 0.0;
  std::vector<double> grid_, cum_;
  struct SplineImpl;
  std::shared_ptr<SplineImpl> spline_;
};

}  // namespace dicke

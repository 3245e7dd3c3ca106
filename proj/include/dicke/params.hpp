#pragma once
#include <cmath>
#include <stdexcept>
#include <string>

namespace dicke {

// exit-code contract: 2 config, 3 numerical, 4 unsupported model
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedModel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// H = w a'a + w0 Jz + (gm/sqrt(2j)) (a'J- + a J+) + (gp/sqrt(2j)) (a'J+ + a J-)
// gm = gp = g is the isotropic model, gp = 0 the co-rotating one.
struct Params {
  double omega = 1.0;
  double omega0 = 1.0;
  double gminus = 1.0;
  double gplus = 1.0;
  double j = 30.0;

  int two_j() const { return static_cast<int>(std::llround(2.0 * j)); }

  void validate() const {
    if (!(omega > 0.0) || !(omega0 > 0.0))
      throw ConfigError("omega and omega0 must be positive");
    if (!(j > 0.0) || std::abs(2.0 * j - two_j()) > 1e-9)
      throw ConfigError("2j must be a positive integer, got j=" + std::to_string(j));
    if (gminus < 0.0 || gplus < 0.0)
      throw ConfigError("couplings must be nonnegative");
  }

  bool isotropic() const { return gminus == gplus; }

  double g() const {
    if (!isotropic())
      throw UnsupportedModel("isotropic coupling requested with gminus != gplus");
    return gminus;
  }

  // critical coupling of the ground-state transition
  double gc() const { return 0.5 * std::sqrt(omega * omega0); }

  // displacement slope of the adapted basis: A = a + G Jx, G = 2g/(w sqrt(2j))
  double G() const { return 2.0 * g() / (omega * std::sqrt(2.0 * j)); }

  bool superradiant() const { return g() > gc(); }

  static Params isotropic_coupling(double omega, double omega0, double g, double j) {
    Params p;
    p.omega = omega;
    p.omega0 = omega0;
    p.gminus = p.gplus = g;
    p.j = j;
    p.validate();
    return p;
  }
};

}  // namespace dicke

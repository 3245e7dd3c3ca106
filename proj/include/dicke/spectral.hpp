#pragma once
#include <dicke/linalg.hpp>
#include <dicke/model.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dicke {

// truncation filter: weight inside the top boson layers must stay negligible
inline constexpr double kTailFraction = 0.10;
inline constexpr double kTailWeight = 1e-8;

struct Spectrum {
  Params params;
  int N_max = 0;
  int parity = +1;
  Eigen::VectorXd energies;              // ascending, full sector
  Eigen::MatrixXd vectors;               // may carry only a column prefix
  std::vector<unsigned char> converged;  // per level, tail-weight filter
  int converged_prefix = 0;              // levels [0, prefix) all converged

  int dim() const { return int(energies.size()); }
  double scaled(int k) const { return energies(k) / params.j; }
  // converged levels with scaled energy in [lo, hi]
  std::vector<int> window(double lo, double hi) const;
};

Spectrum diagonalize_sector(const Params& p, int N_max, int parity,
                            bool want_vectors = true);

// binary eigenpair cache; a load succeeds only on an exact parameter match
bool save_spectrum(const std::string& path, const Spectrum& s);
std::optional<Spectrum> load_spectrum(const std::string& path, const Params& p,
                                      int N_max, int parity);

}  // namespace dicke

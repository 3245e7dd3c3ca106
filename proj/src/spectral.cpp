#include <dicke/spectral.hpp>

#include <cstdint>
#include <cstring>
#include <fstream>

namespace dicke {

std::vector<int> Spectrum::window(double lo, double hi) const {
  std::vector<int> idx;
  for (int k = 0; k < dim(); ++k) {
    if (!converged[k]) continue;
    double e = scaled(k);
    if (e >= lo && e <= hi) idx.push_back(k);
  }
  return idx;
}

Spectrum diagonalize_sector(const Params& p, int N_max, int parity,
                            bool want_vectors) {
  ParityBasis basis = ParityBasis::make(p, N_max, parity);
  EigenSystem es = eigh(build_hamiltonian(p, basis), want_vectors);

  Spectrum s;
  s.params = p;
  s.N_max = N_max;
  s.parity = parity;
  s.energies = std::move(es.values);
  s.vectors = std::move(es.vectors);
  s.converged.assign(s.dim(), 0);

  if (want_vectors) {
    int tail_layers = std::max(1, int(kTailFraction * (N_max + 1)));
    int N_tail = N_max + 1 - tail_layers;
    std::vector<int> tail_rows;
    for (int i = 0; i < basis.dim(); ++i)
      if (basis.states[i].second >= N_tail) tail_rows.push_back(i);
    for (int k = 0; k < s.dim(); ++k) {
      double w = 0.0;
      for (int i : tail_rows) w += s.vectors(i, k) * s.vectors(i, k);
      s.converged[k] = (w < kTailWeight) ? 1 : 0;
    }
  }
  s.converged_prefix = 0;
  while (s.converged_prefix < s.dim() && s.converged[s.converged_prefix])
    ++s.converged_prefix;
  return s;
}

namespace {

constexpr char kMagic[8] = {'D', 'I', 'C', 'K', 'E', 'V', '1', '\0'};

struct CacheHeader {
  char magic[8];
  double par[5];  // omega, omega0, gminus, gplus, j
  int32_t kind;   // 3 = adapted-basis parity sector
  int32_t cutoff;
  int32_t parity;
  int32_t dim;
  int32_t ncols;
  int32_t prefix;
};

void fill_params(double* par, const Params& p) {
  par[0] = p.omega;
  par[1] = p.omega0;
  par[2] = p.gminus;
  par[3] = p.gplus;
  par[4] = p.j;
}

}  // namespace

bool save_spectrum(const std::string& path, const Spectrum& s) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return false;
  CacheHeader h{};
  std::memcpy(h.magic, kMagic, 8);
  fill_params(h.par, s.params);
  h.kind = 3;
  h.cutoff = s.N_max;
  h.parity = s.parity;
  h.dim = s.dim();
  h.ncols = std::min<int32_t>(int32_t(s.vectors.cols()), s.converged_prefix);
  h.prefix = s.converged_prefix;
  f.write(reinterpret_cast<const char*>(&h), sizeof h);
  f.write(reinterpret_cast<const char*>(s.energies.data()),
          std::streamsize(sizeof(double)) * h.dim);
  f.write(reinterpret_cast<const char*>(s.vectors.data()),
          std::streamsize(sizeof(double)) * h.dim * h.ncols);
  std::vector<uint8_t> flags(s.converged.begin(), s.converged.end());
  f.write(reinterpret_cast<const char*>(flags.data()), h.dim);
  return bool(f);
}

std::optional<Spectrum> load_spectrum(const std::string& path, const Params& p,
                                      int N_max, int parity) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  CacheHeader h{};
  if (!f.read(reinterpret_cast<char*>(&h), sizeof h)) return std::nullopt;
  double par[5];
  fill_params(par, p);
  if (std::memcmp(h.magic, kMagic, 8) != 0) return std::nullopt;
  if (std::memcmp(h.par, par, sizeof par) != 0) return std::nullopt;
  if (h.kind != 3 || h.cutoff != N_max || h.parity != parity)
    return std::nullopt;
  if (h.dim <= 0 || h.ncols < 0 || h.ncols > h.dim) return std::nullopt;

  Spectrum s;
  s.params = p;
  s.N_max = N_max;
  s.parity = parity;
  s.energies.resize(h.dim);
  s.vectors.resize(h.dim, h.ncols);
  if (!f.read(reinterpret_cast<char*>(s.energies.data()),
              std::streamsize(sizeof(double)) * h.dim))
    return std::nullopt;
  if (!f.read(reinterpret_cast<char*>(s.vectors.data()),
              std::streamsize(sizeof(double)) * h.dim * h.ncols))
    return std::nullopt;
  std::vector<uint8_t> flags(h.dim);
  if (!f.read(reinterpret_cast<char*>(flags.data()), h.dim))
    return std::nullopt;
  s.converged.assign(flags.begin(), flags.end());
  s.converged_prefix = h.prefix;
  return s;
}

}  // namespace dicke

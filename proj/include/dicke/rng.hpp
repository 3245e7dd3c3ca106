#pragma once
#include <cstdint>
#include <random>

namespace dicke {

// splitmix64; used to derive independent per-task seeds so parallel loops are
// schedule-independent and runs reproduce bit-for-bit from one master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t item = 0) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s ^= stream * 0x9e3779b97f4a7c15ull + 0x243f6a8885a308d3ull;
  std::uint64_t b = splitmix64(s);
  s ^= item * 0xd1342543de82ef95ull + 0x452821e638d01377ull;
  std::uint64_t c = splitmix64(s);
  return a ^ (b * 0x2545f4914f6cdd1dull) ^ c;
}

inline std::mt19937_64 make_rng(std::uint64_t master, std::uint64_t stream,
                                std::uint64_t item = 0) {
  return std::mt19937_64(derive_seed(master, stream, item));
}

}  // namespace dicke

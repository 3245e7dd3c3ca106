#pragma once
#include <dicke/classical.hpp>
#include <dicke/params.hpp>

#include <cstdint>
#include <vector>

namespace dicke {

// microcanonical sample point; w is a self-normalized importance weight with
// sample mean 1, produced by the 1/|dh/dq| surface density at the solved
// q-roots (both roots of the quadratic enter as separate candidates)
struct ShellPoint {
  ClassicalState x;
  double w;
};

std::vector<ShellPoint> shell_sample_weighted(const Params& p, double eps,
                                              int count, std::uint64_t seed);

// unweighted convenience: systematic resampling of a larger weighted set
std::vector<ClassicalState> shell_sample(const Params& p, double eps,
                                         int count, std::uint64_t seed);

}  // namespace dicke

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nilkit/presentation.hpp"

namespace nilkit {

struct BenchPoint {
  std::size_t size = 0;
  double seconds = 0;  // per normal-form computation
};

enum class BenchFamily {
  SlpDoubling,  // size M: (a1 a2)^(2^(M-2)) as an SLP with M rules
  PlainWords,   // size L: uniformly random plain word of length L over a1, a2
};

/// Times normal-form computation over a size sweep. Each point repeats the
/// computation until at least `min_seconds` have passed and keeps the best of
/// three such batches.
std::vector<BenchPoint> bench_normal_form(NilpotentPresentation const& P, BenchFamily family,
                                          std::vector<std::size_t> const& sizes,
                                          std::uint64_t seed = 1, double min_seconds = 0.02);

std::string to_csv(std::vector<BenchPoint> const& points);

/// Least-squares slope of log(seconds) against log(size).
double loglog_slope(std::vector<BenchPoint> const& points);

/// max / min of seconds / size^3. A single curve C * M^3 fits every point
/// within a factor k iff this is at most k^2.
double cubic_spread(std::vector<BenchPoint> const& points);

}  // namespace nilkit

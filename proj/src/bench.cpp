#include "nilkit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace nilkit {

namespace {

StraightLineProgram doubling_program(std::size_t m) {
  using Rule = StraightLineProgram::Rule;
  std::vector<Rule> rules;
  Rule a1{Rule::Kind::Terminal, 0, 0, 0, 1};
  Rule a2{Rule::Kind::Terminal, 0, 0, 1, 1};
  rules.push_back(a1);
  rules.push_back(a2);
  rules.push_back({Rule::Kind::Pair, 0, 1, 0, 1});
  while (rules.size() < std::max<std::size_t>(m, 3)) {
    std::size_t last = rules.size() - 1;
    rules.push_back({Rule::Kind::Pair, last, last, 0, 1});
  }
  return StraightLineProgram(std::move(rules));
}

Word random_word(std::size_t length, std::size_t gens, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> gen(0, gens - 1);
  std::bernoulli_distribution sign;
  Word w;
  // One letter per position, without merging neighbours.
  for (std::size_t i = 0; i < length; ++i) w.letters.push_back({gen(rng), sign(rng) ? 1 : -1});
  return w;
}

template <class F>
double time_best(F&& f, double min_seconds) {
  using clock = std::chrono::steady_clock;
  double best = 1e300;
  for (int batch = 0; batch < 3; ++batch) {
    auto start = clock::now();
    std::size_t runs = 0;
    double elapsed = 0;
    do {
      f();
      ++runs;
      elapsed = std::chrono::duration<double>(clock::now() - start).count();
    } while (elapsed < min_seconds);
    best = std::min(best, elapsed / static_cast<double>(runs));
  }
  return best;
}

}  // namespace

std::vector<BenchPoint> bench_normal_form(NilpotentPresentation const& P, BenchFamily family,
                                          std::vector<std::size_t> const& sizes,
                                          std::uint64_t seed, double min_seconds) {
  if (P.size() < 2) throw Error("benchmark needs at least two generators");
  std::mt19937_64 rng(seed);
  std::vector<BenchPoint> out;
  for (std::size_t n : sizes) {
    BenchPoint p;
    p.size = n;
    if (family == BenchFamily::SlpDoubling) {
      auto prog = doubling_program(n);
      p.seconds = time_best([&] { (void)P.evaluate(prog); }, min_seconds);
    } else {
      Word w = random_word(n, 2, rng);
      p.seconds = time_best([&] { (void)P.collect(w); }, min_seconds);
    }
    out.push_back(p);
  }
  return out;
}

std::string to_csv(std::vector<BenchPoint> const& points) {
  std::ostringstream out;
  out << "size,seconds\n";
  for (auto const& p : points) out << p.size << ',' << p.seconds << '\n';
  return out.str();
}

double loglog_slope(std::vector<BenchPoint> const& points) {
  if (points.size() < 2) throw Error("slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double const n = static_cast<double>(points.size());
  for (auto const& p : points) {
    double x = std::log(static_cast<double>(p.size)), y = std::log(p.seconds);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double cubic_spread(std::vector<BenchPoint> const& points) {
  if (points.empty()) throw Error("no points");
  double lo = 1e300, hi = 0;
  for (auto const& p : points) {
    double m = static_cast<double>(p.size);
    double c = p.seconds / (m * m * m);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return hi / lo;
}

}  // namespace nilkit

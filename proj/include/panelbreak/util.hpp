#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "panelbreak/errors.hpp"

namespace panelbreak {

// Nearest-rank percentile: the order statistic at rank ceil(q/100 * N)
// (1-based), the convention used everywhere in this project. `sorted`
// must be ascending and nonempty; q in [0, 100].
inline double nearest_rank_percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty())
    throw Error(ErrorKind::invalid_input, "percentile of empty sample");
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::ptrdiff_t>(std::ceil(q / 100.0 * n));
  rank = std::clamp<std::ptrdiff_t>(rank, 1, sorted.size());
  return sorted[static_cast<std::size_t>(rank - 1)];
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Sample SD, N-1 denominator.
inline double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// SplitMix64 mixer (Steele, Lea & Flood 2014). Used to derive independent
// per-replication seeds from (master_seed + index) so parallel Monte Carlo
// runs are order-invariant.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + index);
}

// Fixed-format real for output tables: 'digits' significant digits, "nan"
// for non-finite so files are byte-stable.
std::string format_real(double x, int digits);

}  // namespace panelbreak

#ifndef EXITTIME_TESTS_ORACLES_HPP
#define EXITTIME_TESTS_ORACLES_HPP

// Independent reference computations for the tests. These deliberately avoid
// the library code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

/// Sum of independent exponentials drawn by inversion from a private engine.
inline std::vector<double> sum_of_exponentials(const std::vector<double>& rates, std::size_t n,
                                               std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) {
    x = 0.0;
    for (double r : rates) {
      x += -std::log1p(-u(eng)) / r;
    }
  }
  return out;
}

/// Literal set-based reading of the grouping procedure: find the maximum of
/// what is left, take every remaining element >= max - eps * max, remove them,
/// repeat. Returns (harmonic-mean rate, count) per group.
inline std::vector<std::pair<double, std::size_t>> group_by_removal(std::vector<double> pool,
                                                                    double eps) {
  std::vector<std::pair<double, std::size_t>> groups;
  while (!pool.empty()) {
    const double top = *std::max_element(pool.begin(), pool.end());
    const double floor = top - eps * top;
    std::vector<double> taken;
    std::vector<double> rest;
    for (double v : pool) {
      (v >= floor ? taken : rest).push_back(v);
    }
    double inv = 0.0;
    for (double v : taken) inv += 1.0 / v;
    groups.emplace_back(static_cast<double>(taken.size()) / inv, taken.size());
    pool = std::move(rest);
  }
  return groups;
}

/// Composite Simpson on [a, b] with n (even) panels.
template <class F>
double simpson(F f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) {
    s += (i % 2 ? 4.0 : 2.0) * f(a + static_cast<double>(i) * h);
  }
  return s * h / 3.0;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace oracle

#endif  // EXITTIME_TESTS_ORACLES_HPP

#ifndef EXITTIME_STATS_HPP
#define EXITTIME_STATS_HPP

#include <cstddef>
#include <span>

namespace exittime {

/// Two-sample Kolmogorov-Smirnov statistic sup_t |F_a(t) - F_b(t)|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Asymptotic critical value c(alpha) * sqrt((n + m) / (n m)) with
/// c(alpha) = sqrt(-ln(alpha / 2) / 2); c(0.01) ~ 1.628.
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

struct KsResult {
  double statistic = 0.0;
  double critical = 0.0;
  bool equivalent = false;  // statistic below the critical value
};

KsResult ks_test(std::span<const double> a, std::span<const double> b, double alpha = 0.01);

}  // namespace exittime

#endif  // EXITTIME_STATS_HPP

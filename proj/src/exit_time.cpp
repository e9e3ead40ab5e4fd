#include "exittime/exit_time.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace exittime {

std::uint64_t GroupedPropensities::total_count() const {
  std::uint64_t n = 0;
  for (const auto& g : groups) {
    n += g.count;
  }
  return n;
}

double GroupedPropensities::mean_time() const {
  double t = 0.0;
  for (const auto& g : groups) {
    t += static_cast<double>(g.count) / g.lambda_tilde;
  }
  return t;
}

GroupedPropensities partition(const PropensityLog& log, double epsilon) {
  if (!(epsilon >= 0.0)) {
    throw std::invalid_argument("epsilon must be nonnegative");
  }
  std::vector<double> sorted = log.lambdas;
  for (double v : sorted) {
    if (!(v > 0.0)) {
      throw std::invalid_argument("propensity log entries must be positive");
    }
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  GroupedPropensities out;
  out.epsilon = epsilon;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double leader = sorted[i];
    const double floor = leader - epsilon * leader;
    double inverse_sum = 0.0;
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] >= floor) {
      inverse_sum += 1.0 / sorted[j];
      ++j;
    }
    const auto n = static_cast<std::uint64_t>(j - i);
    out.groups.push_back({static_cast<double>(n) / inverse_sum, n});
    i = j;
  }
  return out;
}

double sample_exit_time(const GroupedPropensities& grouped, RandomStream& stream) {
  double t = 0.0;
  for (const auto& g : grouped.groups) {
    t += stream.gamma(1.0 / g.lambda_tilde, g.count);
  }
  return t;
}

double rho(const DrawCounters& exit_time_ensemble, const DrawCounters& ssa_ensemble) {
  if (ssa_ensemble.exponential == 0) {
    throw std::domain_error("rho undefined: SSA ensemble drew no exponential variates");
  }
  return static_cast<double>(exit_time_ensemble.gamma) /
         static_cast<double>(ssa_ensemble.exponential);
}

}  // namespace exittime

#ifndef EXITTIME_EXIT_TIME_HPP
#define EXITTIME_EXIT_TIME_HPP

#include <cstdint>
#include <vector>

#include "exittime/ssa.hpp"
#include "exittime/variate_source.hpp"

namespace exittime {

struct PropensityGroup {
  double lambda_tilde = 0.0;  // harmonic mean of the member rates
  std::uint64_t count = 0;
};

struct GroupedPropensities {
  std::vector<PropensityGroup> groups;  // descending lambda_tilde
  double epsilon = 0.0;

  std::uint64_t total_count() const;
  /// sum_k n_k / lambda_tilde_k, the expected exit time of the grouping.
  double mean_time() const;
};

/// Greedy relative-gap grouping of a propensity log.
///
/// The rates are sorted in descending order. Starting from the largest
/// remaining rate L, every remaining rate a >= L - epsilon * L joins the current
/// group; the group is replaced by (lambda_tilde, n) with
/// 1/lambda_tilde = mean of 1/a over its members. This repeats until no rates
/// remain. epsilon = 0 groups exact ties only; an empty log gives no groups.
GroupedPropensities partition(const PropensityLog& log, double epsilon);

/// Exit time as a sum of one Erlang(n_k, lambda_tilde_k) variate per group.
/// Returns 0 for an empty grouping.
double sample_exit_time(const GroupedPropensities& grouped, RandomStream& stream);

/// Gamma draws of the exit-time ensemble over exponential draws of the SSA
/// ensemble. Throws std::domain_error when the SSA side drew nothing.
double rho(const DrawCounters& exit_time_ensemble, const DrawCounters& ssa_ensemble);

}  // namespace exittime

#endif  // EXITTIME_EXIT_TIME_HPP

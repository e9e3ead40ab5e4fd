#ifndef EXITTIME_HARNESS_HPP
#define EXITTIME_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "exittime/reaction_model.hpp"
#include "exittime/stats.hpp"
#include "exittime/variate_source.hpp"

namespace exittime {

class GridMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// No trajectory of the ensemble reached the exit condition.
class AllCensored : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Method {
  enum class Kind { Ssa, ExitTime };
  Kind kind = Kind::Ssa;
  double epsilon = 0.0;

  static Method ssa() { return {Kind::Ssa, 0.0}; }
  static Method exit_time(double epsilon) { return {Kind::ExitTime, epsilon}; }
};

/// Raw outcome of N trajectories. Trajectory i draws from RandomStream(seed, i),
/// so the result does not depend on the worker count.
struct EnsembleSamples {
  Method method;
  std::uint64_t seed = 0;
  std::uint64_t n_trajectories = 0;
  std::vector<double> exit_times;  // exited trajectories, in trajectory order
  std::uint64_t n_absorbed = 0;
  std::uint64_t n_step_limit = 0;
  std::uint64_t total_steps = 0;
  DrawCounters counters;
  double wall_seconds = 0.0;

  std::uint64_t n_exited() const { return exit_times.size(); }
  std::uint64_t n_censored() const { return n_absorbed + n_step_limit; }
};

EnsembleSamples run_ensemble(const ReactionSystem& system, const SystemState& initial,
                             const ExitCondition& exit, Method method, std::uint64_t n,
                             std::uint64_t seed, unsigned workers = 0);

/// Uniform bins over [t_min, t_max]; the last bin is closed on the right.
struct BinGrid {
  double t_min = 0.0;
  double t_max = 1.0;
  std::size_t bins = 1;

  double width() const { return (t_max - t_min) / static_cast<double>(bins); }
  double edge(std::size_t i) const;
  /// Bin of t, or nullopt when t lies outside [t_min, t_max].
  std::optional<std::size_t> bin_of(double t) const;

  friend bool operator==(const BinGrid&, const BinGrid&) = default;
};

/// Grid spanning the pooled min/max exit time of the given ensembles.
BinGrid pooled_grid(std::span<const EnsembleSamples* const> ensembles, std::size_t bins);

struct EnsembleHistogram {
  BinGrid grid;
  std::vector<double> densities;  // normalised by n_exited, so sum(d * width) = 1 if none fall outside
  std::uint64_t n_exited = 0;
  std::uint64_t n_censored = 0;
  std::uint64_t n_outside = 0;
  DrawCounters counters;
};

EnsembleHistogram make_histogram(const EnsembleSamples& samples, const BinGrid& grid);

struct ErrorNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  std::vector<double> per_bin;
};

/// per_bin = |d1 - d2|; l1 = sum(per_bin * w); l2 = sqrt(sum(per_bin^2 * w)).
ErrorNorms pointwise_error(const EnsembleHistogram& a, const EnsembleHistogram& b);

struct Comparison {
  EnsembleSamples ssa;
  EnsembleSamples method;
  EnsembleHistogram ssa_histogram;
  EnsembleHistogram method_histogram;
  ErrorNorms error;
  double rho = 0.0;
  KsResult ks;
};

/// SSA ensemble on `seed`, exit-time ensemble on `seed + 1`, both binned on
/// their pooled grid.
Comparison compare_methods(const ReactionSystem& system, const SystemState& initial,
                           const ExitCondition& exit, double epsilon, std::uint64_t n,
                           std::uint64_t seed, std::size_t bins, unsigned workers = 0);

struct ConvergenceRecord {
  double epsilon = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double rho = 0.0;
  std::uint64_t n = 0;
  std::uint64_t n_exited = 0;
  std::uint64_t n_censored = 0;
  std::uint64_t gamma_draws = 0;
  std::uint64_t exp_draws = 0;  // of the shared SSA reference
  double wall_seconds = 0.0;
  /// log(e_prev / e) / log(eps_prev / eps) against the previous record.
  std::optional<double> order;
};

struct ConvergenceStudy {
  EnsembleSamples reference;
  EnsembleHistogram reference_histogram;
  std::vector<EnsembleHistogram> method_histograms;
  std::vector<ConvergenceRecord> records;
};

/// One SSA reference (seed) against exit-time ensembles (seed + 1) for each
/// epsilon, all on one pooled grid. Epsilons must be >= 0 and strictly descending.
ConvergenceStudy convergence_study(const ReactionSystem& system, const SystemState& initial,
                                   const ExitCondition& exit, std::span<const double> epsilons,
                                   std::uint64_t n, std::uint64_t seed, std::size_t bins,
                                   unsigned workers = 0);

}  // namespace exittime

#endif  // EXITTIME_HARNESS_HPP

#include "exittime/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "exittime/exit_time.hpp"
#include "exittime/ssa.hpp"

namespace exittime {

namespace {

enum class Slot : std::uint8_t { Exited, Absorbed, StepLimit };

struct WorkerTally {
  DrawCounters counters;
  std::uint64_t steps = 0;
  std::exception_ptr error;
};

}  // namespace

EnsembleSamples run_ensemble(const ReactionSystem& system, const SystemState& initial,
                             const ExitCondition& exit, Method method, std::uint64_t n,
                             std::uint64_t seed, unsigned workers) {
  if (n < 1) {
    throw std::invalid_argument("ensemble size must be >= 1");
  }
  if (method.kind == Method::Kind::ExitTime && !(method.epsilon >= 0.0)) {
    throw std::invalid_argument("epsilon must be nonnegative");
  }
  system.validate_state(initial);
  system.validate_exit(exit);
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));

  const auto start = std::chrono::steady_clock::now();
  std::vector<double> times(n, 0.0);
  std::vector<Slot> slots(n, Slot::Absorbed);
  std::vector<WorkerTally> tallies(workers);

  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t i = w; i < n; i += workers) {
        RandomStream stream(seed, i);
        TrajectoryOutcome out;
        if (method.kind == Method::Kind::Ssa) {
          out = run_ssa(system, initial, exit, stream);
          times[i] = out.exit_time;
        } else {
          out = run_timefree(system, initial, exit, stream);
          if (out.status == TrajectoryStatus::Exited) {
            times[i] = sample_exit_time(partition(*out.propensity_log, method.epsilon), stream);
          }
        }
        switch (out.status) {
          case TrajectoryStatus::Exited: slots[i] = Slot::Exited; break;
          case TrajectoryStatus::Absorbed: slots[i] = Slot::Absorbed; break;
          case TrajectoryStatus::StepLimit: slots[i] = Slot::StepLimit; break;
        }
        tallies[w].counters += stream.counters();
        tallies[w].steps += out.steps;
      }
    } catch (...) {
      tallies[w].error = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work, w);
    }
  }

  EnsembleSamples out;
  out.method = method;
  out.seed = seed;
  out.n_trajectories = n;
  for (const auto& t : tallies) {
    if (t.error) {
      std::rethrow_exception(t.error);
    }
    out.counters += t.counters;
    out.total_steps += t.steps;
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    switch (slots[i]) {
      case Slot::Exited: out.exit_times.push_back(times[i]); break;
      case Slot::Absorbed: ++out.n_absorbed; break;
      case Slot::StepLimit: ++out.n_step_limit; break;
    }
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

double BinGrid::edge(std::size_t i) const {
  if (i >= bins) {
    return t_max;
  }
  return t_min + static_cast<double>(i) * width();
}

std::optional<std::size_t> BinGrid::bin_of(double t) const {
  if (!(t >= t_min && t <= t_max)) {
    return std::nullopt;
  }
  const auto b = static_cast<std::size_t>((t - t_min) / width());
  return std::min(b, bins - 1);
}

BinGrid pooled_grid(std::span<const EnsembleSamples* const> ensembles, std::size_t bins) {
  if (bins < 1) {
    throw std::invalid_argument("bin count must be >= 1");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto* e : ensembles) {
    for (double t : e->exit_times) {
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  if (!(lo <= hi)) {
    throw AllCensored("no exited trajectories to bin");
  }
  if (hi == lo) {
    hi = lo + 1.0;
  }
  return BinGrid{lo, hi, bins};
}

EnsembleHistogram make_histogram(const EnsembleSamples& samples, const BinGrid& grid) {
  if (samples.exit_times.empty()) {
    throw AllCensored("ensemble has no exited trajectories");
  }
  if (grid.bins < 1 || !(grid.t_max > grid.t_min)) {
    throw std::invalid_argument("bin grid must have t_max > t_min and at least one bin");
  }
  EnsembleHistogram h;
  h.grid = grid;
  h.n_exited = samples.n_exited();
  h.n_censored = samples.n_censored();
  h.counters = samples.counters;
  std::vector<std::uint64_t> counts(grid.bins, 0);
  for (double t : samples.exit_times) {
    if (auto b = grid.bin_of(t)) {
      ++counts[*b];
    } else {
      ++h.n_outside;
    }
  }
  const double norm = static_cast<double>(h.n_exited) * grid.width();
  h.densities.resize(grid.bins);
  for (std::size_t b = 0; b < grid.bins; ++b) {
    h.densities[b] = static_cast<double>(counts[b]) / norm;
  }
  return h;
}

ErrorNorms pointwise_error(const EnsembleHistogram& a, const EnsembleHistogram& b) {
  if (!(a.grid == b.grid)) {
    throw GridMismatch("histograms are on different bin grids (" + std::to_string(a.grid.bins) +
                       " vs " + std::to_string(b.grid.bins) + " bins)");
  }
  ErrorNorms e;
  const double w = a.grid.width();
  e.per_bin.resize(a.grid.bins);
  double sq = 0.0;
  for (std::size_t i = 0; i < a.grid.bins; ++i) {
    e.per_bin[i] = std::abs(a.densities[i] - b.densities[i]);
    e.l1 += e.per_bin[i] * w;
    sq += e.per_bin[i] * e.per_bin[i] * w;
  }
  e.l2 = std::sqrt(sq);
  return e;
}

Comparison compare_methods(const ReactionSystem& system, const SystemState& initial,
                           const ExitCondition& exit, double epsilon, std::uint64_t n,
                           std::uint64_t seed, std::size_t bins, unsigned workers) {
  Comparison c;
  c.ssa = run_ensemble(system, initial, exit, Method::ssa(), n, seed, workers);
  c.method = run_ensemble(system, initial, exit, Method::exit_time(epsilon), n, seed + 1, workers);
  const EnsembleSamples* both[] = {&c.ssa, &c.method};
  const BinGrid grid = pooled_grid(both, bins);
  c.ssa_histogram = make_histogram(c.ssa, grid);
  c.method_histogram = make_histogram(c.method, grid);
  c.error = pointwise_error(c.ssa_histogram, c.method_histogram);
  c.rho = rho(c.method.counters, c.ssa.counters);
  c.ks = ks_test(c.ssa.exit_times, c.method.exit_times);
  return c;
}

ConvergenceStudy convergence_study(const ReactionSystem& system, const SystemState& initial,
                                   const ExitCondition& exit, std::span<const double> epsilons,
                                   std::uint64_t n, std::uint64_t seed, std::size_t bins,
                                   unsigned workers) {
  if (epsilons.empty()) {
    throw std::invalid_argument("convergence study needs at least one epsilon");
  }
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] >= 0.0)) {
      throw std::invalid_argument("epsilons must be nonnegative");
    }
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      throw std::invalid_argument("epsilons must be strictly descending");
    }
  }

  ConvergenceStudy study;
  study.reference = run_ensemble(system, initial, exit, Method::ssa(), n, seed, workers);
  std::vector<EnsembleSamples> runs;
  runs.reserve(epsilons.size());
  for (double eps : epsilons) {
    runs.push_back(run_ensemble(system, initial, exit, Method::exit_time(eps), n, seed + 1, workers));
  }

  std::vector<const EnsembleSamples*> all{&study.reference};
  for (const auto& r : runs) {
    all.push_back(&r);
  }
  const BinGrid grid = pooled_grid(all, bins);
  study.reference_histogram = make_histogram(study.reference, grid);

  for (std::size_t i = 0; i < runs.size(); ++i) {
    study.method_histograms.push_back(make_histogram(runs[i], grid));
    const ErrorNorms e = pointwise_error(study.reference_histogram, study.method_histograms.back());
    ConvergenceRecord rec;
    rec.epsilon = epsilons[i];
    rec.l1 = e.l1;
    rec.l2 = e.l2;
    rec.rho = rho(runs[i].counters, study.reference.counters);
    rec.n = n;
    rec.n_exited = runs[i].n_exited();
    rec.n_censored = runs[i].n_censored();
    rec.gamma_draws = runs[i].counters.gamma;
    rec.exp_draws = study.reference.counters.exponential;
    rec.wall_seconds = runs[i].wall_seconds;
    if (i > 0 && epsilons[i] > 0.0 && rec.l1 > 0.0) {
      const auto& prev = study.records.back();
      rec.order = std::log(prev.l1 / rec.l1) / std::log(prev.epsilon / rec.epsilon);
    }
    study.records.push_back(std::move(rec));
  }
  return study;
}

}  // namespace exittime

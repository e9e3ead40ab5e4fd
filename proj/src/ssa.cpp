#include "exittime/ssa.hpp"

namespace exittime {

namespace {

template <bool Timed>
TrajectoryOutcome run(const ReactionSystem& system, const SystemState& initial,
                      const ExitCondition& exit, RandomStream& stream,
                      const StateObserver& observer) {
  system.validate_state(initial);
  system.validate_exit(exit);

  TrajectoryOutcome out;
  out.final_state = initial;
  if constexpr (!Timed) {
    out.propensity_log.emplace();
  }
  SystemState& state = out.final_state;
  std::vector<double> a;

  if (observer) {
    observer(state);
  }
  for (;;) {
    if (exit.satisfied(state)) {
      out.status = TrajectoryStatus::Exited;
      break;
    }
    const double a0 = propensities(system, state, a);
    if (a0 <= 0.0) {
      out.status = TrajectoryStatus::Absorbed;
      break;
    }
    if (out.steps >= exit.max_steps) {
      out.status = TrajectoryStatus::StepLimit;
      break;
    }
    if constexpr (Timed) {
      state.time += stream.exponential(a0);
    } else {
      out.propensity_log->lambdas.push_back(a0);
    }
    const std::size_t j = stream.discrete_index(a, a0);
    fire(state, system.reactions()[j]);
    ++out.steps;
    if (observer) {
      observer(state);
    }
  }
  if constexpr (Timed) {
    out.exit_time = state.time - initial.time;
  }
  return out;
}

}  // namespace

TrajectoryOutcome run_ssa(const ReactionSystem& system, const SystemState& initial,
                          const ExitCondition& exit, RandomStream& stream,
                          const StateObserver& observer) {
  return run<true>(system, initial, exit, stream, observer);
}

TrajectoryOutcome run_timefree(const ReactionSystem& system, const SystemState& initial,
                               const ExitCondition& exit, RandomStream& stream,
                               const StateObserver& observer) {
  return run<false>(system, initial, exit, stream, observer);
}

}  // namespace exittime

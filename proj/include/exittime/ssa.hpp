#ifndef EXITTIME_SSA_HPP
#define EXITTIME_SSA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "exittime/reaction_model.hpp"
#include "exittime/variate_source.hpp"

namespace exittime {

enum class TrajectoryStatus { Exited, Absorbed, StepLimit };

/// Total propensities lambda_i = a0(X_i) recorded before each firing.
struct PropensityLog {
  std::vector<double> lambdas;
};

struct TrajectoryOutcome {
  TrajectoryStatus status = TrajectoryStatus::Absorbed;
  double exit_time = 0.0;  // SSA only, and only when status == Exited
  std::uint64_t steps = 0;
  SystemState final_state;
  std::optional<PropensityLog> propensity_log;
};

/// Invoked with the initial state and after every firing.
using StateObserver = std::function<void(const SystemState&)>;

/// Direct-method SSA until the exit condition holds, a0 reaches zero, or
/// exit.max_steps reactions have fired.
TrajectoryOutcome run_ssa(const ReactionSystem& system, const SystemState& initial,
                          const ExitCondition& exit, RandomStream& stream,
                          const StateObserver& observer = {});

/// Same state-transition loop without holding times; records the propensity log.
TrajectoryOutcome run_timefree(const ReactionSystem& system, const SystemState& initial,
                               const ExitCondition& exit, RandomStream& stream,
                               const StateObserver& observer = {});

}  // namespace exittime

#endif  // EXITTIME_SSA_HPP

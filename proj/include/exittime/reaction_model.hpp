#ifndef EXITTIME_REACTION_MODEL_HPP
#define EXITTIME_REACTION_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace exittime {

using Count = std::int64_t;

/// Raised when a model definition violates a structural invariant.
class ModelError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a reaction would drive a copy number negative.
class IllegalFiring : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct Species {
  std::size_t id = 0;
  std::string name;
};

/// Mass-action reaction: sum r_j X_j --rate--> sum g_j X_j.
/// Reactant orders and product counts are dense per-species vectors.
class Reaction {
public:
  Reaction(double rate, std::vector<Count> reactants, std::vector<Count> products);

  double rate() const { return rate_; }
  const std::vector<Count>& reactants() const { return reactants_; }
  const std::vector<Count>& products() const { return products_; }
  const std::vector<Count>& stoichiometry() const { return stoichiometry_; }

private:
  double rate_;
  std::vector<Count> reactants_;
  std::vector<Count> products_;
  std::vector<Count> stoichiometry_;
};

struct SystemState {
  std::vector<Count> counts;
  double time = 0.0;
};

enum class Comparator { GreaterEqual, LessEqual, Equal };

struct ExitCondition {
  std::size_t species = 0;
  Comparator comparator = Comparator::GreaterEqual;
  Count threshold = 0;
  std::uint64_t max_steps = 10'000'000;

  bool satisfied(const SystemState& state) const;
};

/// Immutable after construction; safe to share between worker threads.
class ReactionSystem {
public:
  ReactionSystem(std::vector<std::string> species_names, std::vector<Reaction> reactions,
                 Count omega);

  std::size_t species_count() const { return species_.size(); }
  const std::vector<Species>& species() const { return species_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  Count omega() const { return omega_; }

  /// Index of the named species; throws ModelError if absent.
  std::size_t species_index(const std::string& name) const;

  /// Largest summed positive stoichiometry over all reactions (at least 1).
  Count max_total_gain() const;

  void validate_state(const SystemState& state) const;
  void validate_exit(const ExitCondition& exit) const;

private:
  std::vector<Species> species_;
  std::vector<Reaction> reactions_;
  Count omega_;
};

/// a_i(X) = k * omega * prod_j X_j (X_j - 1) ... (X_j - r_j + 1) / omega^{r_j}.
/// Exactly zero when any falling-factorial factor is nonpositive.
double propensity(const ReactionSystem& system, const SystemState& state, std::size_t reaction);

double total_propensity(const ReactionSystem& system, const SystemState& state);

/// Fills `out` with every propensity and returns their sum.
double propensities(const ReactionSystem& system, const SystemState& state,
                    std::vector<double>& out);

SystemState apply_reaction(const SystemState& state, const Reaction& reaction);

/// In-place variant used by the simulation loops.
void fire(SystemState& state, const Reaction& reaction);

}  // namespace exittime

#endif  // EXITTIME_REACTION_MODEL_HPP

#include "exittime/reaction_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace exittime {

Reaction::Reaction(double rate, std::vector<Count> reactants, std::vector<Count> products)
    : rate_(rate), reactants_(std::move(reactants)), products_(std::move(products)) {
  if (!(rate_ >= 0.0) || !std::isfinite(rate_)) {
    throw ModelError("reaction rate must be finite and nonnegative");
  }
  if (reactants_.size() != products_.size()) {
    throw ModelError("reactant and product vectors must cover the same species");
  }
  stoichiometry_.resize(reactants_.size());
  for (std::size_t j = 0; j < reactants_.size(); ++j) {
    if (reactants_[j] < 0 || products_[j] < 0) {
      throw ModelError("reactant orders and product counts must be nonnegative");
    }
    stoichiometry_[j] = products_[j] - reactants_[j];
  }
}

bool ExitCondition::satisfied(const SystemState& state) const {
  const Count x = state.counts[species];
  switch (comparator) {
    case Comparator::GreaterEqual:
      return x >= threshold;
    case Comparator::LessEqual:
      return x <= threshold;
    case Comparator::Equal:
      return x == threshold;
  }
  return false;
}

ReactionSystem::ReactionSystem(std::vector<std::string> species_names,
                               std::vector<Reaction> reactions, Count omega)
    : reactions_(std::move(reactions)), omega_(omega) {
  if (omega_ < 1) {
    throw ModelError("omega must be >= 1");
  }
  std::set<std::string> seen;
  species_.reserve(species_names.size());
  for (std::size_t i = 0; i < species_names.size(); ++i) {
    if (species_names[i].empty()) {
      throw ModelError("species names must be nonempty");
    }
    if (!seen.insert(species_names[i]).second) {
      throw ModelError("duplicate species name '" + species_names[i] + "'");
    }
    species_.push_back(Species{i, std::move(species_names[i])});
  }
  for (const auto& r : reactions_) {
    if (r.reactants().size() != species_.size()) {
      throw ModelError("reaction references species outside the system");
    }
  }
}

std::size_t ReactionSystem::species_index(const std::string& name) const {
  for (const auto& s : species_) {
    if (s.name == name) {
      return s.id;
    }
  }
  throw ModelError("unknown species '" + name + "'");
}

Count ReactionSystem::max_total_gain() const {
  Count best = 1;
  for (const auto& r : reactions_) {
    Count gain = 0;
    for (Count v : r.stoichiometry()) {
      gain += std::max<Count>(v, 0);
    }
    best = std::max(best, gain);
  }
  return best;
}

void ReactionSystem::validate_state(const SystemState& state) const {
  if (state.counts.size() != species_.size()) {
    throw ModelError("state has " + std::to_string(state.counts.size()) +
                     " counts, system has " + std::to_string(species_.size()) + " species");
  }
  for (std::size_t j = 0; j < state.counts.size(); ++j) {
    if (state.counts[j] < 0) {
      throw ModelError("negative initial count for species '" + species_[j].name + "'");
    }
  }
  if (!(state.time >= 0.0)) {
    throw ModelError("state time must be nonnegative");
  }
}

void ReactionSystem::validate_exit(const ExitCondition& exit) const {
  if (exit.species >= species_.size()) {
    throw ModelError("exit species index out of range");
  }
  if (exit.threshold < 0 || exit.threshold > omega_ * max_total_gain()) {
    throw ModelError("exit threshold outside [0, omega * max gain]");
  }
  if (exit.max_steps < 1) {
    throw ModelError("exit max_steps must be >= 1");
  }
}

double propensity(const ReactionSystem& system, const SystemState& state, std::size_t reaction) {
  const Reaction& r = system.reactions()[reaction];
  const double omega = static_cast<double>(system.omega());
  double a = r.rate() * omega;
  const auto& orders = r.reactants();
  for (std::size_t j = 0; j < orders.size(); ++j) {
    const Count x = state.counts[j];
    for (Count q = 0; q < orders[j]; ++q) {
      if (x - q <= 0) {
        return 0.0;
      }
      a *= static_cast<double>(x - q) / omega;
    }
  }
  return a;
}

double total_propensity(const ReactionSystem& system, const SystemState& state) {
  double a0 = 0.0;
  for (std::size_t i = 0; i < system.reactions().size(); ++i) {
    a0 += propensity(system, state, i);
  }
  return a0;
}

double propensities(const ReactionSystem& system, const SystemState& state,
                    std::vector<double>& out) {
  const std::size_t n = system.reactions().size();
  out.resize(n);
  double a0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = propensity(system, state, i);
    a0 += out[i];
  }
  return a0;
}

void fire(SystemState& state, const Reaction& reaction) {
  const auto& nu = reaction.stoichiometry();
  for (std::size_t j = 0; j < nu.size(); ++j) {
    if (state.counts[j] + nu[j] < 0) {
      throw IllegalFiring("reaction would drive species " + std::to_string(j) + " negative");
    }
  }
  for (std::size_t j = 0; j < nu.size(); ++j) {
    state.counts[j] += nu[j];
  }
}

SystemState apply_reaction(const SystemState& state, const Reaction& reaction) {
  SystemState next = state;
  fire(next, reaction);
  return next;
}

}  // namespace exittime

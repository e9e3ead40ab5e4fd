#ifndef EXITTIME_MODEL_IO_HPP
#define EXITTIME_MODEL_IO_HPP

#include <filesystem>
#include <string_view>

#include "exittime/reaction_model.hpp"

namespace exittime {

/// A reaction system together with the experiment it is run under.
struct ModelDefinition {
  ReactionSystem system;
  SystemState initial;
  ExitCondition exit;
};

/// Parses the JSON model schema:
///
///   { "species": ["S", "I", "R"], "omega": 100,
///     "reactions": [{"rate": 1.5, "reactants": {"S": 1, "I": 1}, "products": {"I": 2}}, ...],
///     "initial": {"S": 95, "I": 5, "R": 0},
///     "exit": {"species": "R", "op": ">=", "value": 85, "max_steps": 1000000} }
///
/// `exit.max_steps` is optional; species missing from `initial` start at 0.
/// Unknown fields anywhere are rejected. Errors throw ModelError whose message
/// starts with the JSON path of the offending field.
ModelDefinition parse_model(std::string_view json_text);

ModelDefinition load_model(const std::filesystem::path& path);

}  // namespace exittime

#endif  // EXITTIME_MODEL_IO_HPP

#include <doctest.h>

#include <string>

#include "exittime/model_io.hpp"

using namespace exittime;

namespace {

const std::string kSir = R"({
  "species": ["S", "I", "R"], "omega": 100,
  "reactions": [
    {"rate": 1.5, "reactants": {"S": 1, "I": 1}, "products": {"I": 2}},
    {"rate": 1.0, "reactants": {"I": 1}, "products": {"R": 1}}],
  "initial": {"S": 95, "I": 5},
  "exit": {"species": "R", "op": ">=", "value": 85}})";

std::string error_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ModelError& e) {
    return e.what();
  }
  return "";
}

std::string with(std::string text, const std::string& from, const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

}  // namespace

TEST_CASE("parses the SIR model") {
  const auto m = parse_model(kSir);
  CHECK(m.system.species_count() == 3);
  CHECK(m.system.omega() == 100);
  CHECK(m.system.reactions()[0].stoichiometry() == std::vector<Count>{-1, 1, 0});
  CHECK(m.system.reactions()[1].stoichiometry() == std::vector<Count>{0, -1, 1});
  CHECK(m.initial.counts == std::vector<Count>{95, 5, 0});
  CHECK(m.exit.species == 2);
  CHECK(m.exit.comparator == Comparator::GreaterEqual);
  CHECK(m.exit.threshold == 85);
}

TEST_CASE("bundled sir.json loads") {
  const auto m = load_model(std::string(EXITTIME_MODELS_DIR) + "/sir.json");
  CHECK(m.system.reactions()[0].rate() == 1.5);
  CHECK(m.initial.counts == std::vector<Count>{95, 5, 0});
}

TEST_CASE("diagnostics name the offending field") {
  CHECK(error_of(with(kSir, "\"omega\": 100", "\"omega\": 100, \"colour\": 1"))
            .starts_with("colour: unknown field"));
  CHECK(error_of(with(kSir, "\"rate\": 1.0,", "\"rate\": 1.0, \"k\": 2,"))
            .starts_with("reactions[1].k: unknown field"));
  CHECK(error_of(with(kSir, "\"rate\": 1.5", "\"rate\": -1.5")).starts_with("reactions[0].rate"));
  CHECK(error_of(with(kSir, "{\"I\": 1}, \"products\": {\"R\": 1}",
                      "{\"Q\": 1}, \"products\": {\"R\": 1}"))
            .starts_with("reactions[1].reactants.Q: unknown species"));
  CHECK(error_of(with(kSir, "\">=\"", "\">\"")).starts_with("exit.op"));
  CHECK(error_of(with(kSir, "\"value\": 85", "\"value\": 1000")).starts_with("exit.value"));
  CHECK(error_of(with(kSir, "\"value\": 85", "\"value\": 85, \"max_steps\": 0"))
            .starts_with("exit.max_steps"));
  CHECK(error_of(with(kSir, "\"omega\": 100", "\"omega\": 0")).starts_with("omega"));
  CHECK(error_of(with(kSir, "\"species\": \"R\"", "\"species\": \"Z\"")).starts_with("exit.species"));
  CHECK(error_of("{\"species\": [\"A\"]}").starts_with("omega: missing"));
  CHECK(error_of("not json").starts_with("model: invalid JSON"));
  CHECK(error_of(with(kSir, "\"S\": 95", "\"S\": 9.5")).starts_with("initial.S"));
}

TEST_CASE("optional max_steps is honoured") {
  const auto m = parse_model(with(kSir, "\"value\": 85", "\"value\": 85, \"max_steps\": 42"));
  CHECK(m.exit.max_steps == 42);
}

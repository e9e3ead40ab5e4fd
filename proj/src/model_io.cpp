#include "exittime/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace exittime {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ModelError(where + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      known = known || item.key() == key;
    }
    if (!known) {
      fail(where.empty() ? item.key() : where + "." + item.key(), "unknown field");
    }
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(where.empty() ? std::string(key) : where + "." + key, "missing required field");
  }
  return *it;
}

Count as_count(const json& v, const std::string& where) {
  if (!v.is_number_integer()) {
    fail(where, "expected an integer");
  }
  const auto x = v.get<std::int64_t>();
  if (x < 0) {
    fail(where, "must be nonnegative");
  }
  return x;
}

std::vector<Count> species_map(const json& obj, const std::vector<std::string>& names,
                               const std::string& where) {
  if (!obj.is_object()) {
    fail(where, "expected an object mapping species names to integers");
  }
  std::vector<Count> dense(names.size(), 0);
  for (const auto& item : obj.items()) {
    const std::string field = where + "." + item.key();
    std::size_t idx = names.size();
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (names[j] == item.key()) {
        idx = j;
      }
    }
    if (idx == names.size()) {
      fail(field, "unknown species");
    }
    dense[idx] = as_count(item.value(), field);
  }
  return dense;
}

Comparator parse_op(const json& v, const std::string& where) {
  if (!v.is_string()) {
    fail(where, "expected one of \">=\", \"<=\", \"==\"");
  }
  const auto op = v.get<std::string>();
  if (op == ">=") return Comparator::GreaterEqual;
  if (op == "<=") return Comparator::LessEqual;
  if (op == "==") return Comparator::Equal;
  fail(where, "expected one of \">=\", \"<=\", \"==\" (got \"" + op + "\")");
}

}  // namespace

ModelDefinition parse_model(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    fail("model", "top level must be an object");
  }
  reject_unknown(doc, "", {"species", "omega", "reactions", "initial", "exit"});

  const json& species_json = require(doc, "species", "");
  if (!species_json.is_array() || species_json.empty()) {
    fail("species", "expected a nonempty array of names");
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < species_json.size(); ++i) {
    if (!species_json[i].is_string()) {
      fail("species[" + std::to_string(i) + "]", "expected a string");
    }
    names.push_back(species_json[i].get<std::string>());
  }
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) {
    fail("species", "names must be unique");
  }

  const json& omega_json = require(doc, "omega", "");
  if (!omega_json.is_number_integer() || omega_json.get<std::int64_t>() < 1) {
    fail("omega", "expected an integer >= 1");
  }
  const Count omega = omega_json.get<std::int64_t>();

  const json& reactions_json = require(doc, "reactions", "");
  if (!reactions_json.is_array()) {
    fail("reactions", "expected an array");
  }
  std::vector<Reaction> reactions;
  for (std::size_t i = 0; i < reactions_json.size(); ++i) {
    const std::string where = "reactions[" + std::to_string(i) + "]";
    const json& r = reactions_json[i];
    if (!r.is_object()) {
      fail(where, "expected an object");
    }
    reject_unknown(r, where, {"rate", "reactants", "products"});
    const json& rate = require(r, "rate", where);
    if (!rate.is_number() || rate.get<double>() < 0.0) {
      fail(where + ".rate", "expected a nonnegative number");
    }
    auto reactants = species_map(require(r, "reactants", where), names, where + ".reactants");
    auto products = species_map(require(r, "products", where), names, where + ".products");
    try {
      reactions.emplace_back(rate.get<double>(), std::move(reactants), std::move(products));
    } catch (const ModelError& e) {
      fail(where, e.what());
    }
  }

  ReactionSystem system(names, std::move(reactions), omega);

  SystemState initial;
  initial.counts = species_map(require(doc, "initial", ""), names, "initial");

  const json& exit_json = require(doc, "exit", "");
  if (!exit_json.is_object()) {
    fail("exit", "expected an object");
  }
  reject_unknown(exit_json, "exit", {"species", "op", "value", "max_steps"});
  ExitCondition exit;
  const json& exit_species = require(exit_json, "species", "exit");
  if (!exit_species.is_string()) {
    fail("exit.species", "expected a species name");
  }
  try {
    exit.species = system.species_index(exit_species.get<std::string>());
  } catch (const ModelError&) {
    fail("exit.species", "unknown species '" + exit_species.get<std::string>() + "'");
  }
  exit.comparator = parse_op(require(exit_json, "op", "exit"), "exit.op");
  exit.threshold = as_count(require(exit_json, "value", "exit"), "exit.value");
  if (auto it = exit_json.find("max_steps"); it != exit_json.end()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 1) {
      fail("exit.max_steps", "expected an integer >= 1");
    }
    exit.max_steps = it->get<std::uint64_t>();
  }
  try {
    system.validate_exit(exit);
  } catch (const ModelError& e) {
    fail("exit.value", e.what());
  }

  return ModelDefinition{std::move(system), std::move(initial), exit};
}

ModelDefinition load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ModelError("model: cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

}  // namespace exittime

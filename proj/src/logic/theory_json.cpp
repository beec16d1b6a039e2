#include "rsrl/logic/theory_json.hpp"

#include "rsrl/common/error.hpp"

namespace rsrl::logic {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

const json& optional_array(const json& obj, const char* key) {
  static const json empty = json::array();
  if (!obj.contains(key)) return empty;
  const json& v = obj.at(key);
  if (!v.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  return v;
}

}  // namespace

json to_json(const Vocabulary& vocabulary) {
  json atoms = json::array();
  for (const auto& a : vocabulary.atoms()) atoms.push_back({{"name", a.name}, {"kind", to_string(a.kind)}});
  return atoms;
}

Vocabulary vocabulary_from_json(const json& atoms) {
  if (!atoms.is_array()) throw InputError("'atoms' must be an array");
  Vocabulary v;
  for (const auto& a : atoms) v.add(require_string(a, "name"), parse_atom_kind(require_string(a, "kind")));
  return v;
}

json to_json(const ReasonTheory& theory) {
  json rules = json::array();
  for (const auto& r : theory.rules) {
    rules.push_back({{"id", r.id}, {"premise", r.premise}, {"conclusion", r.conclusion}});
  }
  json order = json::array();
  for (const auto& [lo, hi] : theory.order.edges()) order.push_back({{"lower", lo}, {"higher", hi}});
  return {{"rules", std::move(rules)}, {"order", std::move(order)}, {"revision", theory.revision}};
}

ReasonTheory reason_theory_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("theory document must be an object");
  ReasonTheory t;
  for (const auto& r : optional_array(doc, "rules")) {
    t.rules.push_back(DefaultRule{require_string(r, "id"), require_string(r, "premise"),
                                  require_string(r, "conclusion")});
  }
  for (const auto& e : optional_array(doc, "order")) t.order.add(require_string(e, "lower"), require_string(e, "higher"));
  if (doc.contains("revision")) {
    if (!doc["revision"].is_number_unsigned()) throw InputError("'revision' must be a non-negative integer");
    t.revision = doc["revision"].get<std::uint64_t>();
  }
  return t;
}

json to_json(const DefaultTheory& theory) {
  json doc = to_json(ReasonTheory{theory.rules, theory.order, 0});
  doc.erase("revision");
  doc["atoms"] = to_json(theory.vocabulary);
  json background = json::array();
  for (const auto& f : theory.background) background.push_back(f.to_string());
  doc["background"] = std::move(background);
  return doc;
}

DefaultTheory default_theory_from_json(const json& doc) {
  DefaultTheory t;
  t.vocabulary = vocabulary_from_json(require(doc, "atoms"));
  for (const auto& f : optional_array(doc, "background")) {
    if (!f.is_string()) throw InputError("background entries must be formula strings");
    t.background.push_back(parse_formula(f.get<std::string>()));
  }
  ReasonTheory reasons = reason_theory_from_json(doc);
  t.rules = std::move(reasons.rules);
  t.order = std::move(reasons.order);
  t.validate();
  return t;
}

}  // namespace rsrl::logic

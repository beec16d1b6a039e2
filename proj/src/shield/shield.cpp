#include "rsrl/shield/shield.hpp"

#include <algorithm>
#include <set>

#include "rsrl/common/error.hpp"

namespace rsrl::shield {

using logic::Formula;
using nlohmann::json;

json to_json(const Shield& shield) {
  json permitted = json::array();
  for (auto a : shield.permitted.to_vector()) permitted.push_back(env::to_string(a));
  json proper = json::array();
  for (auto s : shield.proper) proper.push_back(logic::rule_ids(shield.rules, s));
  json background = json::array();
  for (const auto& f : shield.background) background.push_back(f.to_string());
  return {{"permitted", std::move(permitted)},
          {"chosen", shield.chosen_ids()},
          {"proper", std::move(proper)},
          {"background", std::move(background)},
          {"ought", shield.ought ? json(shield.ought->to_string()) : json(nullptr)}};
}

ScenarioChooser uniform_chooser(Rng& rng) {
  return [&rng](std::span<const logic::Scenario> proper) { return rng.index(proper.size()); };
}

ShieldGenerator::ShieldGenerator(realization::Realizer realizer, logic::Vocabulary vocabulary,
                                 logic::ReasonerOptions options)
    : realizer_(std::move(realizer)), vocabulary_(std::move(vocabulary)), options_(options) {}

std::vector<Formula> ShieldGenerator::build_background(const env::WorldState& s, const env::LabelSet& labels,
                                                       const std::vector<logic::DefaultRule>& rules) const {
  std::set<Formula> out;
  for (const auto conflict : realizer_.conflict_sets(rules, s, labels)) {
    std::set<std::string> conclusions;
    for (auto i : conflict.indices()) conclusions.insert(rules[i].conclusion);
    std::vector<Formula> atoms;
    for (const auto& c : conclusions) atoms.push_back(Formula::atom(c));
    out.insert(Formula::negation(Formula::conjunction(std::move(atoms))));
  }
  for (const auto& l : labels.items()) out.insert(Formula::atom(l));
  return {out.begin(), out.end()};
}

std::vector<Formula> ShieldGenerator::build_background(const env::WorldState& s,
                                                       const std::vector<logic::DefaultRule>& rules) const {
  return build_background(s, realizer_.world().labels_of(s), rules);
}

logic::DefaultTheory ShieldGenerator::extend(const logic::ReasonTheory& theory, const env::WorldState& s,
                                             const env::LabelSet& labels) const {
  // A triggered rule whose conclusion cannot be realized is contradicted by
  // W; left in D its conclusion would defeat every lower rule ex falso.
  logic::ReasonTheory active;
  active.revision = theory.revision;
  for (const auto& r : theory.rules) {
    if (labels.contains(r.premise) && realizer_.first_actions(r.conclusion, s).empty()) continue;
    active.rules.push_back(r);
  }
  for (const auto& a : active.rules) {
    for (const auto& b : active.rules) {
      if (theory.order.precedes(a.id, b.id)) active.order.add(a.id, b.id);
    }
  }
  return logic::DefaultTheory::extend(vocabulary_, build_background(s, labels, theory.rules), active);
}

env::ActionSet ShieldGenerator::permitted_by(const std::vector<logic::DefaultRule>& rules, logic::Scenario s,
                                             const env::WorldState& state) const {
  env::ActionSet out = env::ActionSet::all();
  for (auto i : s.indices()) out = out & realizer_.first_actions(rules[i].conclusion, state);
  return out;
}

Shield ShieldGenerator::generate(const logic::ReasonTheory& theory, const env::WorldState& s,
                                 const ScenarioChooser& choose) const {
  Shield shield;
  shield.labels = realizer_.world().labels_of(s);
  const logic::Reasoner reasoner(extend(theory, s, shield.labels), options_);
  shield.rules = reasoner.theory().rules;
  shield.background = reasoner.theory().background;
  shield.proper = reasoner.proper_scenarios();
  if (shield.proper.empty()) throw DegenerateShieldError("reason theory has no proper scenario in this state");

  const std::size_t pick = shield.proper.size() == 1 ? 0 : choose(shield.proper);
  if (pick >= shield.proper.size()) throw InputError("scenario chooser returned an out-of-range index");
  shield.chosen = shield.proper[pick];
  shield.permitted = permitted_by(shield.rules, shield.chosen, s);
  if (shield.permitted.empty()) {
    throw DegenerateShieldError("obligations of the chosen scenario {" +
                                [&] {
                                  std::string ids;
                                  for (const auto& id : shield.chosen_ids()) ids += (ids.empty() ? "" : ",") + id;
                                  return ids;
                                }() +
                                "} share no first action");
  }

  std::vector<Formula> disjuncts;
  for (auto p : shield.proper) {
    if (p.empty()) continue;
    std::set<std::string> conclusions;
    for (auto i : p.indices()) conclusions.insert(shield.rules[i].conclusion);
    std::vector<Formula> conj;
    for (const auto& c : conclusions) conj.push_back(Formula::atom(c));
    disjuncts.push_back(Formula::conjunction(std::move(conj)));
  }
  if (!disjuncts.empty()) shield.ought = Formula::disjunction(std::move(disjuncts));
  return shield;
}

Shield ShieldGenerator::generate(const logic::ReasonTheory& theory, const env::WorldState& s, Rng& rng) const {
  return generate(theory, s, uniform_chooser(rng));
}

}  // namespace rsrl::shield

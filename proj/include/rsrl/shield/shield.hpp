#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsrl/common/rng.hpp"
#include "rsrl/env/bridge_world.hpp"
#include "rsrl/logic/reasoner.hpp"
#include "rsrl/realization/realization.hpp"

namespace rsrl::shield {

/// Permissible primitive actions together with the scenario that justifies them.
struct Shield {
  env::ActionSet permitted;
  logic::Scenario chosen;                  // S*, over `rules`
  std::vector<logic::Scenario> proper;     // every proper scenario, ascending
  std::vector<logic::DefaultRule> rules;   // the rule list the scenarios index (see extend)
  std::vector<logic::Formula> background;  // W
  env::LabelSet labels;
  /// All-things-considered ought: disjunction over proper scenarios of the
  /// conjunction of their conclusions. Empty when there is nothing to ought.
  std::optional<logic::Formula> ought;

  std::vector<std::string> chosen_ids() const { return logic::rule_ids(rules, chosen); }
};

nlohmann::json to_json(const Shield& shield);

/// Picks the index of S* among the proper scenarios.
using ScenarioChooser = std::function<std::size_t(std::span<const logic::Scenario>)>;

ScenarioChooser uniform_chooser(Rng& rng);

class ShieldGenerator {
 public:
  ShieldGenerator(realization::Realizer realizer, logic::Vocabulary vocabulary, logic::ReasonerOptions options = {});

  const realization::Realizer& realizer() const noexcept { return realizer_; }
  const logic::Vocabulary& vocabulary() const noexcept { return vocabulary_; }
  const logic::ReasonerOptions& options() const noexcept { return options_; }

  /// W: one exclusivity formula per conflict set plus one atom per label.
  std::vector<logic::Formula> build_background(const env::WorldState& s, const env::LabelSet& labels,
                                               const std::vector<logic::DefaultRule>& rules) const;
  std::vector<logic::Formula> build_background(const env::WorldState& s,
                                               const std::vector<logic::DefaultRule>& rules) const;

  /// The default theory <W, D, <> the reason theory induces in `s`. Rules
  /// that are triggered but unrealizable in `s` are left out of D, and the
  /// order is restricted to the remaining rules.
  logic::DefaultTheory extend(const logic::ReasonTheory& theory, const env::WorldState& s,
                              const env::LabelSet& labels) const;

  Shield generate(const logic::ReasonTheory& theory, const env::WorldState& s, const ScenarioChooser& choose) const;
  Shield generate(const logic::ReasonTheory& theory, const env::WorldState& s, Rng& rng) const;

  /// Intersection of first-action sets over the conclusions of `s`;
  /// all actions for the empty scenario.
  env::ActionSet permitted_by(const std::vector<logic::DefaultRule>& rules, logic::Scenario s,
                              const env::WorldState& state) const;

 private:
  realization::Realizer realizer_;
  logic::Vocabulary vocabulary_;
  logic::ReasonerOptions options_;
};

}  // namespace rsrl::shield

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rsrl/env/bridge_world.hpp"
#include "rsrl/logic/default_theory.hpp"

namespace rsrl::realization {

/// Strategy that decides which trajectories realize an action type.
enum class PlannerKind {
  /// Wait in front of the bridge: no move onto the bridge while someone is on it.
  Wait,
  /// Rescue: shortest route to a cell next to an in-water person, then pullOut.
  Rescue,
};

std::string_view to_string(PlannerKind kind);
PlannerKind parse_planner(std::string_view text);

struct ActionTypeSpec {
  std::string atom;
  PlannerKind planner;
  nlohmann::json params = nlohmann::json::object();
};

class ActionTypeRegistry {
 public:
  /// Throws InputError if the atom already has a planner.
  void add(ActionTypeSpec spec);
  const ActionTypeSpec* find(std::string_view atom) const;
  const std::vector<ActionTypeSpec>& specs() const noexcept { return specs_; }

  /// phi_W -> wait, phi_R -> rescue.
  static ActionTypeRegistry bridge_default();

 private:
  std::vector<ActionTypeSpec> specs_;
};

nlohmann::json to_json(const ActionTypeRegistry& registry);
ActionTypeRegistry action_types_from_json(const nlohmann::json& doc);

/// Connects action types to primitive actions in a given state.
///
/// Planning runs on the deterministic skeleton of the dynamics, so every
/// query is a pure function of (action type, state).
class Realizer {
 public:
  /// `horizon` bounds trajectory length to horizon + 1; -1 selects the episode cap.
  Realizer(env::BridgeWorld world, ActionTypeRegistry registry, int horizon = -1);

  const env::BridgeWorld& world() const noexcept { return world_; }
  const ActionTypeRegistry& registry() const noexcept { return registry_; }
  int horizon() const noexcept { return horizon_; }

  /// First actions of the trajectories realizing `action_type` in `s`.
  /// Empty iff the type is unrealizable. Throws InputError for an unknown type.
  env::ActionSet first_actions(std::string_view action_type, const env::WorldState& s) const;

  bool realizes(std::span<const env::Action> trajectory, std::string_view action_type,
                const env::WorldState& s) const;

  /// Subsets of the rules whose premises hold in `labels` and whose
  /// conclusions share no first action. Returned in ascending bitmask order.
  std::vector<logic::Scenario> conflict_sets(const std::vector<logic::DefaultRule>& rules, const env::WorldState& s,
                                             const env::LabelSet& labels) const;
  std::vector<logic::Scenario> conflict_sets(const std::vector<logic::DefaultRule>& rules,
                                             const env::WorldState& s) const;

  /// Length (moves plus the final pullOut) of the shortest rescue of some
  /// in-water person that completes before they drown.
  std::optional<int> rescue_length(const env::WorldState& s) const;

 private:
  const ActionTypeSpec& spec(std::string_view action_type) const;
  bool enters_occupied_bridge(const env::WorldState& s, env::Action a) const;
  env::ActionSet wait_first_actions(const env::WorldState& s) const;
  env::ActionSet rescue_first_actions(const env::WorldState& s) const;
  bool wait_realizes(std::span<const env::Action> trajectory, const env::WorldState& s) const;
  bool rescue_realizes(std::span<const env::Action> trajectory, const env::WorldState& s) const;

  struct RescuePlan {
    int length = 0;
    std::vector<std::vector<int>> distance_fields;  // one per optimal target
  };
  std::optional<RescuePlan> plan_rescue(const env::WorldState& s) const;

  env::BridgeWorld world_;
  ActionTypeRegistry registry_;
  int horizon_;
};

}  // namespace rsrl::realization

#pragma once

#include <array>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "rsrl/common/rng.hpp"
#include "rsrl/env/bridge_world.hpp"

namespace rsrl::rl {

struct QConfig {
  double alpha = 0.1;
  double gamma = 0.95;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  /// Drowning timers at or below this many steps count as urgent in the state key.
  int urgent_below = 5;
};

nlohmann::json to_json(const QConfig& c);
QConfig q_config_from_json(const nlohmann::json& doc);

/// Linear annealing from epsilon_start to epsilon_end over the run.
double epsilon_at(const QConfig& c, int episode, int episodes);

/// Canonical tabular key: agent, goal, delivery flag and every person's
/// position, with the drowning timer bucketed into safe/urgent.
std::string state_key(const env::WorldState& s, const env::BridgeWorld& world, const QConfig& c);

using ActionValues = std::array<double, 6>;

class QTable {
 public:
  /// Zero for unseen pairs.
  double value(const std::string& key, env::Action a) const;
  const ActionValues* find(const std::string& key) const;
  void set(const std::string& key, env::Action a, double v);
  std::size_t size() const noexcept { return table_.size(); }

  /// Max over `permitted`; zero if the set is empty.
  double best_value(const std::string& key, env::ActionSet permitted) const;

  nlohmann::json to_json(const QConfig& config) const;
  static QTable from_json(const nlohmann::json& doc);

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::unordered_map<std::string, ActionValues> table_;
};

/// Epsilon-greedy restricted to `permitted`; greedy ties go to the earliest
/// action in kAllActions order. Throws StateError on an empty set.
env::Action select_action(const QTable& q, const std::string& key, env::ActionSet permitted, double epsilon, Rng& rng);

/// One-step TD update bootstrapping over the next state's shield.
void update(QTable& q, const std::string& key, env::Action a, double reward, const std::string& next_key,
            env::ActionSet next_permitted, bool terminal, double alpha, double gamma);

}  // namespace rsrl::rl

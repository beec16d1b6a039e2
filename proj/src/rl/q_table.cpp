#include "rsrl/rl/q_table.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rsrl/common/error.hpp"

namespace rsrl::rl {

using nlohmann::json;

json to_json(const QConfig& c) {
  return {{"alpha", c.alpha},
          {"gamma", c.gamma},
          {"epsilon_start", c.epsilon_start},
          {"epsilon_end", c.epsilon_end},
          {"urgent_below", c.urgent_below}};
}

QConfig q_config_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("agent config must be an object");
  QConfig c;
  try {
    c.alpha = doc.value("alpha", c.alpha);
    c.gamma = doc.value("gamma", c.gamma);
    c.epsilon_start = doc.value("epsilon_start", c.epsilon_start);
    c.epsilon_end = doc.value("epsilon_end", c.epsilon_end);
    c.urgent_below = doc.value("urgent_below", c.urgent_below);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad agent config: ") + e.what());
  }
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(c.alpha) || !unit(c.gamma) || !unit(c.epsilon_start) || !unit(c.epsilon_end)) {
    throw InputError("alpha, gamma and epsilon must lie in [0, 1]");
  }
  return c;
}

double epsilon_at(const QConfig& c, int episode, int episodes) {
  if (episodes <= 1) return c.epsilon_start;
  const double frac = std::clamp(static_cast<double>(episode) / (episodes - 1), 0.0, 1.0);
  return c.epsilon_start + (c.epsilon_end - c.epsilon_start) * frac;
}

std::string state_key(const env::WorldState& s, const env::BridgeWorld& world, const QConfig& c) {
  std::vector<std::string> persons;
  for (const auto& p : s.persons) {
    std::string entry = std::to_string(p.pos.x) + "," + std::to_string(p.pos.y);
    if (p.in_water_since) entry += world.time_left(p, s.step) <= c.urgent_below ? "!u" : "!s";
    persons.push_back(std::move(entry));
  }
  // Persons are interchangeable for the policy.
  std::sort(persons.begin(), persons.end());
  std::string key = std::to_string(s.agent.x) + "," + std::to_string(s.agent.y) + "|" + std::to_string(s.goal.x) +
                    "," + std::to_string(s.goal.y) + "|" + (s.delivered ? "1" : "0") + "|";
  for (const auto& p : persons) key += p + ";";
  return key;
}

double QTable::value(const std::string& key, env::Action a) const {
  const auto* v = find(key);
  return v ? (*v)[static_cast<std::size_t>(a)] : 0.0;
}

const ActionValues* QTable::find(const std::string& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

void QTable::set(const std::string& key, env::Action a, double v) {
  if (!std::isfinite(v)) throw InputError("non-finite Q value");
  auto [it, _] = table_.try_emplace(key, ActionValues{});
  it->second[static_cast<std::size_t>(a)] = v;
}

double QTable::best_value(const std::string& key, env::ActionSet permitted) const {
  if (permitted.empty()) return 0.0;
  double best = -INFINITY;
  for (auto a : permitted.to_vector()) best = std::max(best, value(key, a));
  return best;
}

json QTable::to_json(const QConfig& config) const {
  // Sorted keys keep checkpoints byte-stable.
  std::vector<std::string> keys;
  keys.reserve(table_.size());
  for (const auto& [k, _] : table_) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  json entries = json::object();
  for (const auto& k : keys) entries[k] = table_.at(k);
  return {{"config", rl::to_json(config)}, {"entries", std::move(entries)}};
}

QTable QTable::from_json(const json& doc) {
  QTable q;
  try {
    for (const auto& [k, v] : doc.at("entries").items()) {
      const auto values = v.get<std::vector<double>>();
      if (values.size() != 6) throw InputError("Q entry '" + k + "' must have six values");
      for (std::size_t i = 0; i < 6; ++i) q.set(k, env::kAllActions[i], values[i]);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bad Q-table checkpoint: ") + e.what());
  }
  return q;
}

env::Action select_action(const QTable& q, const std::string& key, env::ActionSet permitted, double epsilon,
                          Rng& rng) {
  const auto options = permitted.to_vector();
  if (options.empty()) throw StateError("cannot select an action from an empty shield");
  // Always draw the exploration coin so the stream does not depend on |options|.
  const bool explore = rng.bernoulli(epsilon);
  if (explore) return options[rng.index(options.size())];
  env::Action best = options.front();
  double best_value = q.value(key, best);
  for (auto a : options) {
    const double v = q.value(key, a);
    if (v > best_value) {
      best = a;
      best_value = v;
    }
  }
  return best;
}

void update(QTable& q, const std::string& key, env::Action a, double reward, const std::string& next_key,
            env::ActionSet next_permitted, bool terminal, double alpha, double gamma) {
  const double bootstrap = terminal ? 0.0 : q.best_value(next_key, next_permitted);
  const double old = q.value(key, a);
  const double target = reward + gamma * bootstrap;
  if (alpha == 0.0) return;
  q.set(key, a, old + alpha * (target - old));
}

}  // namespace rsrl::rl

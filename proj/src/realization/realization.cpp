#include "rsrl/realization/realization.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>

#include "rsrl/common/error.hpp"

namespace rsrl::realization {

using env::Action;
using env::ActionSet;
using env::Cell;
using env::WorldState;
using nlohmann::json;

std::string_view to_string(PlannerKind kind) { return kind == PlannerKind::Wait ? "wait" : "rescue"; }

PlannerKind parse_planner(std::string_view text) {
  if (text == "wait") return PlannerKind::Wait;
  if (text == "rescue") return PlannerKind::Rescue;
  throw InputError("unknown planner '" + std::string(text) + "'");
}

void ActionTypeRegistry::add(ActionTypeSpec spec) {
  if (find(spec.atom)) throw InputError("action type '" + spec.atom + "' already has a planner");
  specs_.push_back(std::move(spec));
}

const ActionTypeSpec* ActionTypeRegistry::find(std::string_view atom) const {
  auto it = std::find_if(specs_.begin(), specs_.end(), [&](const ActionTypeSpec& s) { return s.atom == atom; });
  return it == specs_.end() ? nullptr : &*it;
}

ActionTypeRegistry ActionTypeRegistry::bridge_default() {
  ActionTypeRegistry r;
  r.add({"phi_W", PlannerKind::Wait});
  r.add({"phi_R", PlannerKind::Rescue});
  return r;
}

json to_json(const ActionTypeRegistry& registry) {
  json out = json::array();
  for (const auto& s : registry.specs()) {
    out.push_back({{"atom", s.atom}, {"planner", to_string(s.planner)}, {"params", s.params}});
  }
  return out;
}

ActionTypeRegistry action_types_from_json(const json& doc) {
  if (!doc.is_array()) throw InputError("'actionTypes' must be an array");
  ActionTypeRegistry r;
  for (const auto& e : doc) {
    if (!e.is_object() || !e.contains("atom") || !e.contains("planner") || !e["atom"].is_string() ||
        !e["planner"].is_string()) {
      throw InputError("action type entries need string fields 'atom' and 'planner'");
    }
    r.add({e["atom"].get<std::string>(), parse_planner(e["planner"].get<std::string>()),
           e.value("params", json::object())});
  }
  return r;
}

Realizer::Realizer(env::BridgeWorld world, ActionTypeRegistry registry, int horizon)
    : world_(std::move(world)),
      registry_(std::move(registry)),
      horizon_(horizon < 0 ? world_.config().episode_cap : horizon) {}

const ActionTypeSpec& Realizer::spec(std::string_view action_type) const {
  const ActionTypeSpec* s = registry_.find(action_type);
  if (!s) throw InputError("no planner registered for action type '" + std::string(action_type) + "'");
  return *s;
}

ActionSet Realizer::first_actions(std::string_view action_type, const WorldState& s) const {
  switch (spec(action_type).planner) {
    case PlannerKind::Wait: return wait_first_actions(s);
    case PlannerKind::Rescue: return rescue_first_actions(s);
  }
  return {};
}

bool Realizer::realizes(std::span<const Action> trajectory, std::string_view action_type,
                        const WorldState& s) const {
  const PlannerKind kind = spec(action_type).planner;
  if (trajectory.empty() || trajectory.size() > static_cast<std::size_t>(horizon_) + 1) return false;
  return kind == PlannerKind::Wait ? wait_realizes(trajectory, s) : rescue_realizes(trajectory, s);
}

// --- wait ------------------------------------------------------------------

bool Realizer::enters_occupied_bridge(const WorldState& s, Action a) const {
  const auto& map = world_.map();
  const bool someone_on_bridge = std::any_of(s.persons.begin(), s.persons.end(), [&](const env::Person& p) {
    return !p.in_water_since && map.is_bridge(p.pos);
  });
  if (!someone_on_bridge) return false;
  const Cell dest = env::offset(s.agent, a);
  if (dest == s.agent || !map.is_bridge(dest)) return false;
  // Stepping onto the bridge from land is forbidden outright; on the bridge
  // only the step into an occupied cell (a push) is.
  if (!map.is_bridge(s.agent)) return true;
  return std::any_of(s.persons.begin(), s.persons.end(),
                     [&](const env::Person& p) { return !p.in_water_since && p.pos == dest; });
}

ActionSet Realizer::wait_first_actions(const WorldState& s) const {
  ActionSet out;
  for (auto a : env::kAllActions) {
    if (!enters_occupied_bridge(s, a)) out.insert(a);
  }
  return out;
}

bool Realizer::wait_realizes(std::span<const Action> trajectory, const WorldState& s) const {
  WorldState cur = s;
  for (auto a : trajectory) {
    if (enters_occupied_bridge(cur, a)) return false;
    cur = world_.skeleton_step(cur, a).next;
  }
  return true;
}

// --- rescue ----------------------------------------------------------------

std::optional<Realizer::RescuePlan> Realizer::plan_rescue(const WorldState& s) const {
  const auto& map = world_.map();
  const int w = map.width();
  auto idx = [w](Cell c) { return static_cast<std::size_t>(c.y * w + c.x); };

  RescuePlan best;
  best.length = -1;
  for (const auto& p : s.persons) {
    if (!p.in_water_since) continue;
    // Multi-source BFS over solid cells from every rescue spot next to p.
    std::vector<int> dist(static_cast<std::size_t>(w * map.height()), -1);
    std::deque<Cell> queue;
    for (const Cell c : map.solid_neighbors(p.pos)) {
      dist[idx(c)] = 0;
      queue.push_back(c);
    }
    while (!queue.empty()) {
      const Cell c = queue.front();
      queue.pop_front();
      for (const Cell n : map.solid_neighbors(c)) {
        if (dist[idx(n)] < 0) {
          dist[idx(n)] = dist[idx(c)] + 1;
          queue.push_back(n);
        }
      }
    }
    const int to_agent = dist[idx(s.agent)];
    if (to_agent < 0) continue;
    const int length = to_agent + 1;
    if (length > world_.time_left(p, s.step) || length > horizon_ + 1) continue;
    if (best.length < 0 || length < best.length) {
      best.length = length;
      best.distance_fields.clear();
    }
    if (length == best.length) best.distance_fields.push_back(std::move(dist));
  }
  if (best.length < 0) return std::nullopt;
  return best;
}

std::optional<int> Realizer::rescue_length(const WorldState& s) const {
  auto plan = plan_rescue(s);
  if (!plan) return std::nullopt;
  return plan->length;
}

ActionSet Realizer::rescue_first_actions(const WorldState& s) const {
  const auto plan = plan_rescue(s);
  if (!plan) return {};
  if (plan->length == 1) return {Action::PullOut};

  const auto& map = world_.map();
  ActionSet out;
  for (auto a : {Action::North, Action::East, Action::West, Action::South}) {
    const Cell dest = env::offset(s.agent, a);
    if (!map.is_solid(dest)) continue;
    const auto i = static_cast<std::size_t>(dest.y * map.width() + dest.x);
    for (const auto& field : plan->distance_fields) {
      if (field[i] == plan->length - 2) {
        out.insert(a);
        break;
      }
    }
  }
  return out;
}

bool Realizer::rescue_realizes(std::span<const Action> trajectory, const WorldState& s) const {
  const auto length = rescue_length(s);
  if (!length || trajectory.size() != static_cast<std::size_t>(*length)) return false;
  if (trajectory.back() != Action::PullOut) return false;

  std::vector<int> originally_in_water;
  for (const auto& p : s.persons) {
    if (p.in_water_since) originally_in_water.push_back(p.id);
  }
  WorldState cur = s;
  for (std::size_t i = 0; i + 1 < trajectory.size(); ++i) cur = world_.skeleton_step(cur, trajectory[i]).next;

  const WorldState before = cur;
  const auto last = world_.skeleton_step(cur, Action::PullOut);
  if (last.events.rescues != 1) return false;
  for (const auto& p : last.next.persons) {
    if (p.in_water_since) continue;
    auto was = std::find_if(before.persons.begin(), before.persons.end(),
                            [&](const env::Person& q) { return q.id == p.id; });
    if (was != before.persons.end() && was->in_water_since) {
      return std::find(originally_in_water.begin(), originally_in_water.end(), p.id) != originally_in_water.end();
    }
  }
  return false;
}

// --- conflicts -------------------------------------------------------------

std::vector<logic::Scenario> Realizer::conflict_sets(const std::vector<logic::DefaultRule>& rules,
                                                     const WorldState& s, const env::LabelSet& labels) const {
  if (rules.size() > logic::Scenario::kMaxRules) throw ResourceError("too many rules for conflict detection");
  std::uint32_t relevant = 0;
  std::vector<ActionSet> first(rules.size());
  std::map<std::string, ActionSet> cache;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (!labels.contains(rules[i].premise)) continue;
    relevant |= 1u << i;
    auto it = cache.find(rules[i].conclusion);
    if (it == cache.end()) it = cache.emplace(rules[i].conclusion, first_actions(rules[i].conclusion, s)).first;
    first[i] = it->second;
  }
  if (std::popcount(relevant) > 20) throw ResourceError("more than 20 triggered rules in conflict detection");

  std::vector<logic::Scenario> out;
  // Enumerate the nonempty submasks of the relevant rules.
  for (std::uint32_t sub = relevant; sub != 0; sub = (sub - 1) & relevant) {
    ActionSet common = ActionSet::all();
    for (std::uint32_t b = sub; b != 0; b &= b - 1) common = common & first[static_cast<std::size_t>(std::countr_zero(b))];
    if (common.empty()) out.emplace_back(sub);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<logic::Scenario> Realizer::conflict_sets(const std::vector<logic::DefaultRule>& rules,
                                                     const WorldState& s) const {
  return conflict_sets(rules, s, world_.labels_of(s));
}

}  // namespace rsrl::realization

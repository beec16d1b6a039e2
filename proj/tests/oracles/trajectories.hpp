#pragma once

// Exhaustive trajectory enumeration over the deterministic skeleton. The
// realization semantics are restated here directly, without the planners.

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "rsrl/env/bridge_world.hpp"

namespace oracle {

using rsrl::env::Action;
using rsrl::env::BridgeWorld;
using rsrl::env::WorldState;

/// Calls `visit` with every action sequence of length 1..max_len.
inline void for_each_sequence(std::size_t max_len, const std::function<void(const std::vector<Action>&)>& visit) {
  std::vector<Action> seq;
  std::function<void()> rec = [&] {
    if (!seq.empty()) visit(seq);
    if (seq.size() == max_len) return;
    for (auto a : rsrl::env::kAllActions) {
      seq.push_back(a);
      rec();
      seq.pop_back();
    }
  };
  rec();
}

/// Wait: never step from land onto a bridge with someone on it, never step
/// into a bridge cell that a person stands on.
inline bool waits(const BridgeWorld& world, const WorldState& s0, const std::vector<Action>& seq) {
  const auto& map = world.map();
  WorldState s = s0;
  for (auto a : seq) {
    bool bridge_busy = false;
    for (const auto& p : s.persons) bridge_busy |= (!p.in_water_since && map.is_bridge(p.pos));
    const auto dest = rsrl::env::offset(s.agent, a);
    if (bridge_busy && map.in_bounds(dest) && map.is_bridge(dest) && !(dest == s.agent)) {
      if (!map.is_bridge(s.agent)) return false;
      for (const auto& p : s.persons)
        if (!p.in_water_since && p.pos == dest) return false;
    }
    s = world.skeleton_step(s, a).next;
  }
  return true;
}

/// Id of the originally-in-water person rescued by the final pullOut of
/// `seq` within their remaining time, if that is what happens.
inline std::optional<int> rescues_at_end(const BridgeWorld& world, const WorldState& s0,
                                         const std::vector<Action>& seq) {
  if (seq.back() != Action::PullOut) return std::nullopt;
  WorldState s = s0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) s = world.skeleton_step(s, seq[i]).next;
  const auto next = world.skeleton_step(s, Action::PullOut).next;
  for (const auto& after : next.persons) {
    if (after.in_water_since) continue;
    for (const auto& before : s.persons) {
      if (before.id != after.id || !before.in_water_since) continue;
      for (const auto& orig : s0.persons) {
        if (orig.id == after.id && orig.in_water_since &&
            static_cast<int>(seq.size()) <= world.time_left(orig, s0.step)) {
          return after.id;
        }
      }
    }
  }
  return std::nullopt;
}

struct RealizationSets {
  std::vector<std::vector<Action>> wait;
  std::vector<std::vector<Action>> rescue;
};

/// T^W and T^R restricted to sequences of at most max_len actions. T^R keeps
/// only the shortest rescuing sequences.
inline RealizationSets enumerate(const BridgeWorld& world, const WorldState& s, std::size_t max_len) {
  RealizationSets out;
  std::vector<std::vector<Action>> rescuing;
  for_each_sequence(max_len, [&](const std::vector<Action>& seq) {
    if (waits(world, s, seq)) out.wait.push_back(seq);
    if (rescues_at_end(world, s, seq)) rescuing.push_back(seq);
  });
  if (!rescuing.empty()) {
    std::size_t best = rescuing.front().size();
    for (const auto& r : rescuing) best = std::min(best, r.size());
    for (auto& r : rescuing)
      if (r.size() == best) out.rescue.push_back(std::move(r));
  }
  return out;
}

}  // namespace oracle

#pragma once

#include "rsrl/env/bridge_world.hpp"
#include "rsrl/logic/default_theory.hpp"
#include "rsrl/logic/vocabulary.hpp"
#include "rsrl/realization/realization.hpp"
#include "rsrl/shield/shield.hpp"

namespace test {

using namespace rsrl;

inline logic::Vocabulary bridge_vocabulary() {
  return {{"B", logic::AtomKind::Label},
          {"D", logic::AtomKind::Label},
          {"phi_W", logic::AtomKind::ActionType},
          {"phi_R", logic::AtomKind::ActionType}};
}

inline logic::ReasonTheory initial_theory() { return {{{"d1", "B", "phi_W"}, {"d2", "D", "phi_R"}}, {}, 0}; }

inline logic::ReasonTheory exemplary_theory() {
  auto t = initial_theory();
  t.order.add("d1", "d2");
  return t;
}

inline logic::Formula f(const char* text) { return logic::parse_formula(text); }

/// Agent at the bridge head, one person on the bridge, one in the water
/// beside the far end of the bridge.
inline env::WorldState dilemma_state() {
  env::WorldState s;
  s.agent = {3, 0};
  s.goal = {5, 6};
  s.persons = {{0, {3, 2}, std::nullopt}, {1, {2, 5}, 0}};
  return s;
}

inline env::WorldState drowning_state() {
  auto s = dilemma_state();
  s.persons.erase(s.persons.begin());
  return s;
}

inline env::WorldState bridge_person_state() {
  auto s = dilemma_state();
  s.persons.pop_back();
  return s;
}

inline env::WorldState empty_state() {
  auto s = dilemma_state();
  s.persons.clear();
  return s;
}

inline shield::ShieldGenerator bridge_generator(env::EnvConfig config = {}) {
  return {realization::Realizer(env::BridgeWorld(config), realization::ActionTypeRegistry::bridge_default()),
          bridge_vocabulary()};
}

}  // namespace test

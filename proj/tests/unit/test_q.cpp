#include <doctest.h>

#include <array>
#include <cmath>

#include "rsrl/common/error.hpp"
#include "rsrl/rl/q_table.hpp"
#include "support.hpp"

using namespace rsrl;
using env::Action;
using env::ActionSet;

namespace {

const ActionSet kAll = [] {
  ActionSet s;
  for (auto a : env::kAllActions) s.insert(a);
  return s;
}();

}  // namespace

TEST_CASE("single updates") {
  rl::QTable q;
  rl::update(q, "s", Action::Idle, 5.0, "s2", kAll, false, 1.0, 0.0);
  CHECK(q.value("s", Action::Idle) == 5.0);
  CHECK(q.value("s", Action::North) == 0.0);

  const auto before = q;
  rl::update(q, "s", Action::Idle, -40.0, "s2", kAll, false, 0.0, 0.9);
  CHECK(q == before);

  q.set("s2", Action::East, 10.0);
  q.set("s2", Action::West, 20.0);
  rl::update(q, "s", Action::North, 0.0, "s2", ActionSet{Action::East}, false, 1.0, 0.5);
  CHECK(q.value("s", Action::North) == doctest::Approx(5.0));
  rl::update(q, "s", Action::North, 1.0, "s2", kAll, true, 1.0, 0.5);
  CHECK(q.value("s", Action::North) == 1.0);
}

TEST_CASE("two-state chain reaches its fixed point") {
  rl::QTable q;
  const double gamma = 0.9;
  for (int i = 0; i < 4000; ++i) {
    rl::update(q, "a", Action::East, 1.0, "b", ActionSet{Action::West}, false, 0.5, gamma);
    rl::update(q, "b", Action::West, 0.0, "a", ActionSet{Action::East}, false, 0.5, gamma);
  }
  const double qa = 1.0 / (1.0 - gamma * gamma);
  CHECK(std::abs(q.value("a", Action::East) - qa) < 1e-9);
  CHECK(std::abs(q.value("b", Action::West) - gamma * qa) < 1e-9);
}

TEST_CASE("action selection") {
  rl::QTable q;
  Rng rng(3);
  CHECK_THROWS_AS(rl::select_action(q, "s", {}, 0.5, rng), StateError);

  // Ties go to the earliest action.
  CHECK(rl::select_action(q, "s", ActionSet{Action::Idle, Action::West}, 0.0, rng) == Action::West);
  q.set("s", Action::Idle, 1.0);
  CHECK(rl::select_action(q, "s", ActionSet{Action::Idle, Action::West}, 0.0, rng) == Action::Idle);
  // Greedy never leaves the permitted set, even for a better action outside it.
  q.set("s", Action::North, 9.0);
  CHECK(rl::select_action(q, "s", ActionSet{Action::Idle, Action::West}, 0.0, rng) == Action::Idle);

  const ActionSet three{Action::North, Action::South, Action::PullOut};
  std::array<int, 6> counts{};
  const int n = 30000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(rl::select_action(q, "s", three, 1.0, rng))];
  for (auto a : env::kAllActions) {
    const double share = static_cast<double>(counts[static_cast<std::size_t>(a)]) / n;
    if (three.contains(a)) {
      CHECK(share == doctest::Approx(1.0 / 3).epsilon(0.05));
    } else {
      CHECK(counts[static_cast<std::size_t>(a)] == 0);
    }
  }
}

TEST_CASE("epsilon schedule") {
  rl::QConfig c;
  CHECK(rl::epsilon_at(c, 0, 100) == 1.0);
  CHECK(rl::epsilon_at(c, 99, 100) == doctest::Approx(0.05));
  CHECK(rl::epsilon_at(c, 500, 100) == doctest::Approx(0.05));
  CHECK(rl::epsilon_at(c, 0, 1) == 1.0);
}

TEST_CASE("state keys bucket drowning urgency") {
  const env::BridgeWorld world;
  rl::QConfig c;
  auto s = test::dilemma_state();
  const auto safe = rl::state_key(s, world, c);
  CHECK(safe.find("!s") != std::string::npos);
  s.step = world.config().drown_steps - c.urgent_below;
  const auto urgent = rl::state_key(s, world, c);
  CHECK(urgent.find("!u") != std::string::npos);
  s.step = 1;
  CHECK(rl::state_key(s, world, c) == safe);

  auto swapped = test::dilemma_state();
  std::swap(swapped.persons[0], swapped.persons[1]);
  CHECK(rl::state_key(swapped, world, c) == safe);
}

TEST_CASE("checkpoints round-trip") {
  rl::QTable q;
  q.set("k1", Action::PullOut, -3.25);
  q.set("k0", Action::North, 1e-12);
  const auto doc = q.to_json({});
  CHECK(rl::QTable::from_json(doc) == q);
  CHECK(rl::QTable::from_json(nlohmann::json::parse(doc.dump())).to_json({}).dump() == doc.dump());
  CHECK_THROWS_AS(rl::QTable::from_json({{"entries", {{"k", {1, 2}}}}}), InputError);
  CHECK_THROWS_AS(q.set("k", Action::Idle, NAN), InputError);
  CHECK_THROWS_AS(rl::q_config_from_json({{"alpha", 1.5}}), InputError);
}

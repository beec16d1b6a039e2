#include <doctest.h>

#include <random>

#include "../oracles/trajectories.hpp"
#include "rsrl/common/error.hpp"
#include "support.hpp"

using namespace rsrl;
using env::Action;
using env::ActionSet;
using realization::Realizer;

namespace {

Realizer bridge_realizer(int horizon = -1, env::EnvConfig config = {}) {
  return Realizer(env::BridgeWorld(config), realization::ActionTypeRegistry::bridge_default(), horizon);
}

}  // namespace

TEST_CASE("first actions in the dilemma") {
  const auto r = bridge_realizer();
  const auto s = test::dilemma_state();
  CHECK(r.first_actions("phi_W", s) ==
        ActionSet{Action::West, Action::East, Action::North, Action::PullOut, Action::Idle});
  CHECK(r.first_actions("phi_R", s) == ActionSet{Action::South});
  CHECK(r.first_actions("phi_R", test::bridge_person_state()).empty());
  CHECK(r.rescue_length(s) == 6);
  CHECK_THROWS_AS(r.first_actions("phi_X", s), InputError);
}

TEST_CASE("realizes examples") {
  const auto r = bridge_realizer();
  auto near = test::drowning_state();
  near.agent = {3, 3};
  const std::vector<Action> rescue{Action::South, Action::South, Action::PullOut};
  CHECK(r.realizes(rescue, "phi_R", near));
  CHECK_FALSE(r.realizes(std::vector<Action>{Action::South, Action::PullOut}, "phi_R", near));
  CHECK_FALSE(r.realizes(std::vector<Action>{Action::Idle, Action::South, Action::PullOut}, "phi_R", near));
  CHECK(r.realizes(std::vector<Action>{Action::Idle}, "phi_W", test::dilemma_state()));
  CHECK_FALSE(r.realizes(std::vector<Action>{Action::South}, "phi_W", test::dilemma_state()));
  CHECK_FALSE(r.realizes(std::vector<Action>{}, "phi_W", test::dilemma_state()));
}

TEST_CASE("rescue is infeasible when time runs out") {
  const auto r = bridge_realizer();
  auto late = test::dilemma_state();
  late.step = 10;  // five actions left, six needed
  CHECK(r.first_actions("phi_R", late).empty());
  late.step = 9;
  CHECK(r.first_actions("phi_R", late) == ActionSet{Action::South});
}

TEST_CASE("conflict sets") {
  const auto r = bridge_realizer();
  const auto rules = test::initial_theory().rules;
  using V = std::vector<logic::Scenario>;
  CHECK(r.conflict_sets(rules, test::dilemma_state()) == V{logic::Scenario::of({0, 1})});
  CHECK(r.conflict_sets(rules, test::bridge_person_state()).empty());
  CHECK(r.conflict_sets(rules, test::empty_state()).empty());
  // An unrealizable obligation conflicts with itself.
  auto late = test::drowning_state();
  late.step = 14;
  late.agent = {0, 0};
  CHECK(r.conflict_sets(rules, late) == V{logic::Scenario::of({1})});
}

namespace {

env::WorldState random_state(const env::BridgeWorld& world, std::mt19937& gen) {
  const auto& map = world.map();
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  std::vector<env::Cell> solid, all;
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x) {
      all.push_back({x, y});
      if (map.is_solid({x, y})) solid.push_back({x, y});
    }
  env::WorldState s;
  s.step = uniform(0, 20);
  s.agent = solid[static_cast<std::size_t>(uniform(0, static_cast<int>(solid.size()) - 1))];
  s.goal = map.goal_cells().front();
  const int persons = uniform(0, 3);
  for (int i = 0; i < persons; ++i) {
    env::Person p{i, all[static_cast<std::size_t>(uniform(0, static_cast<int>(all.size()) - 1))], std::nullopt};
    if (map.is_water(p.pos)) p.in_water_since = s.step - uniform(0, world.config().drown_steps - 1);
    s.persons.push_back(p);
  }
  return s;
}

}  // namespace

TEST_CASE("planners agree with exhaustive trajectory enumeration on small maps") {
  std::mt19937 gen(31);
  const std::vector<std::vector<std::string>> maps{
      {"SSSSS", "WWBWW", "WWBWW", "WWBWW", "SSSSS"},
      {"SSS", "WBW", "WBW", "SSS"},
      {"SSSS", "WBWW", "SBSS", "WBWW", "SSSS"},
  };
  int nonempty_rescues = 0;
  for (const auto& rows : maps) {
    env::EnvConfig config;
    config.terrain = rows;
    config.drown_steps = 6;
    const env::BridgeWorld world(config);
    constexpr int kHorizon = 4;
    const Realizer r(world, realization::ActionTypeRegistry::bridge_default(), kHorizon);
    for (int i = 0; i < 40; ++i) {
      const auto s = random_state(world, gen);
      CAPTURE(env::to_json(s).dump());
      const auto sets = oracle::enumerate(world, s, kHorizon + 1);

      ActionSet wait_first, rescue_first;
      for (const auto& t : sets.wait) wait_first.insert(t.front());
      for (const auto& t : sets.rescue) rescue_first.insert(t.front());
      REQUIRE(r.first_actions("phi_W", s) == wait_first);
      REQUIRE(r.first_actions("phi_R", s) == rescue_first);
      nonempty_rescues += !rescue_first.empty();

      std::set<std::vector<Action>> wait_set(sets.wait.begin(), sets.wait.end());
      std::set<std::vector<Action>> rescue_set(sets.rescue.begin(), sets.rescue.end());
      oracle::for_each_sequence(kHorizon + 1, [&](const std::vector<Action>& t) {
        REQUIRE(r.realizes(t, "phi_W", s) == (wait_set.count(t) > 0));
        REQUIRE(r.realizes(t, "phi_R", s) == (rescue_set.count(t) > 0));
      });
    }
  }
  CHECK(nonempty_rescues > 10);
}

TEST_CASE("conflict sets are upward closed") {
  logic::Vocabulary v{{"B", logic::AtomKind::Label}, {"D", logic::AtomKind::Label}};
  const std::vector<logic::DefaultRule> rules{
      {"a", "B", "phi_W"}, {"b", "D", "phi_R"}, {"c", "B", "phi_R"}, {"d", "D", "phi_W"}};
  const auto r = bridge_realizer();
  const env::BridgeWorld world;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto s = world.reset(seed, env::Constellation::Random);
    const auto labels = world.labels_of(s);
    const auto sets = r.conflict_sets(rules, s, labels);
    std::uint32_t relevant = 0;
    for (std::size_t i = 0; i < rules.size(); ++i)
      if (labels.contains(rules[i].premise)) relevant |= 1u << i;
    for (auto c : sets) {
      REQUIRE(c.subset_of(logic::Scenario(relevant)));
      for (std::uint32_t sup = c.bits(); sup <= relevant; sup = (sup + 1) | c.bits()) {
        if ((sup & ~relevant) != 0) continue;
        REQUIRE(std::find(sets.begin(), sets.end(), logic::Scenario(sup)) != sets.end());
      }
    }
  }
}

TEST_CASE("planners are pure") {
  const auto r = bridge_realizer();
  const auto s = test::dilemma_state();
  CHECK(r.first_actions("phi_R", s) == r.first_actions("phi_R", s));
  CHECK(r.conflict_sets(test::initial_theory().rules, s) == r.conflict_sets(test::initial_theory().rules, s));
}

TEST_CASE("action type registry JSON") {
  const auto reg = realization::ActionTypeRegistry::bridge_default();
  const auto back = realization::action_types_from_json(realization::to_json(reg));
  REQUIRE(back.specs().size() == 2);
  CHECK(back.find("phi_R")->planner == realization::PlannerKind::Rescue);
  CHECK_THROWS_AS(realization::action_types_from_json(nlohmann::json::array({{{"atom", "x"}, {"planner", "fly"}}})),
                  InputError);
}

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles/random_theory.hpp"
#include "rsrl/judge/moral_judge.hpp"
#include "rsrl/learn/trainer.hpp"
#include "rsrl/logic/reasoner.hpp"
#include "rsrl/runtime/episode_log.hpp"
#include "rsrl/runtime/files.hpp"
#include "rsrl/shield/shield.hpp"

using namespace rsrl;
using env::Action;
using env::ActionSet;
using logic::Scenario;

namespace {

// Pinned tolerances and budgets.
constexpr double kReasoningBudgetSeconds = 1.0;
constexpr double kSafetyBudgetSeconds = 60.0;
constexpr int kSafetyEpisodesPerScene = 250;
constexpr int kOracleTheories = 1000;
constexpr int kOracleMaxAtoms = 6;
constexpr int kOracleMaxRules = 8;
constexpr int kTieBreakSeeds = 10000;
constexpr double kTieBreakTolerance = 0.02;
constexpr int kFurtherEpisodes = 100;

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const runtime::TheoryFile& initial_file() {
  static const auto file = runtime::builtin_theory("initial");
  return file;
}

const logic::ReasonTheory& exemplary() {
  static const auto t = runtime::builtin_theory("exemplary").theory;
  return t;
}

shield::ShieldGenerator generator(const env::EnvConfig& config = {}) {
  return {realization::Realizer(env::BridgeWorld(config), realization::ActionTypeRegistry::bridge_default()),
          initial_file().vocabulary};
}

/// The dilemma: agent at the bridge head, a person on the bridge, a person in
/// the water beside the far end of the bridge.
env::WorldState dilemma_state() {
  const env::BridgeWorld world;
  return world.reset(0, env::Constellation::Dilemma);
}

std::string ids_text(const std::vector<logic::DefaultRule>& rules, const std::vector<Scenario>& scenarios) {
  std::string out = "{";
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    out += i ? ",{" : "{";
    const auto ids = logic::rule_ids(rules, scenarios[i]);
    for (std::size_t j = 0; j < ids.size(); ++j) out += (j ? "," : "") + ids[j];
    out += "}";
  }
  return out + "}";
}

Outcome worked_reasoning() {
  const auto start = Clock::now();
  const auto& v = initial_file().vocabulary;
  const auto B = logic::Formula::atom("B");
  const auto D = logic::Formula::atom("D");
  const auto exclusive = logic::parse_formula("(not (and phi_W phi_R))");
  struct Case {
    std::vector<logic::Formula> w;
    bool ordered;
    std::string expected;
  };
  const std::vector<Case> cases = {{{B}, false, "{{d1}}"},
                                   {{D}, false, "{{d2}}"},
                                   {{B, D}, false, "{{d1,d2}}"},
                                   {{exclusive, B, D}, false, "{{d1},{d2}}"},
                                   {{exclusive, B, D}, true, "{{d2}}"}};
  std::string detail;
  bool pass = true;
  for (const auto& c : cases) {
    const auto theory = c.ordered ? exemplary() : initial_file().theory;
    const logic::Reasoner r(logic::DefaultTheory::extend(v, c.w, theory));
    const auto got = ids_text(r.theory().rules, r.proper_scenarios());
    pass &= got == c.expected;
    detail += (detail.empty() ? "" : " ") + got;
  }
  const double elapsed = seconds_since(start);
  pass &= elapsed < kReasoningBudgetSeconds;
  return {pass, detail + " in " + std::to_string(elapsed) + "s"};
}

Outcome dilemma_shield() {
  const auto gen = generator();
  const auto s = dilemma_state();
  auto pick = [](Scenario want) {
    return [want](std::span<const Scenario> options) {
      for (std::size_t i = 0; i < options.size(); ++i) {
        if (options[i] == want) return i;
      }
      return options.size();
    };
  };
  const auto waiting = gen.generate(initial_file().theory, s, pick(Scenario::of({0})));
  const auto rescuing = gen.generate(initial_file().theory, s, pick(Scenario::of({1})));
  const ActionSet expected_wait{Action::West, Action::East, Action::North, Action::PullOut, Action::Idle};
  const bool pass = waiting.permitted == expected_wait && rescuing.permitted == ActionSet{Action::South};
  return {pass, "S*={d1} -> " + env::to_string(waiting.permitted) + ", S*={d2} -> " +
                    env::to_string(rescuing.permitted)};
}

Outcome dilemma_judge() {
  const judge::OracleJudge j(exemplary(), generator());
  const auto s = dilemma_state();
  const env::LabelSet labels{"B", "D"};
  const auto idle = j.judge(s, labels, Action::Idle);
  const auto south = j.judge(s, labels, Action::South);
  const bool pass = idle == judge::Accusation{"phi_R", "D"} && !south;
  auto text = [](const std::optional<judge::Accusation>& a) {
    return a ? "(" + a->obligation + "," + a->reason + ")" : std::string("silence");
  };
  return {pass, "idle -> " + text(idle) + ", south -> " + text(south)};
}

Outcome end_to_end() {
  learn::RunConfig config;
  config.constellation = env::Constellation::Dilemma;
  config.episodes = 1000;  // only sets the exploration schedule
  config.seed = 2024;
  const auto wiring = learn::make_wiring(config, initial_file().vocabulary, initial_file().action_types, exemplary());
  learn::Trainer trainer(config, wiring, initial_file().theory);

  bool learned = false;
  bool theory_ok = false;
  int bad_shields = 0;
  int dilemma_starts = 0;
  int first_accusation_episode = -1;
  int further_accusations = 0;
  int episode = 0;
  for (; episode < config.episodes; ++episode) {
    if (learned && episode > first_accusation_episode + kFurtherEpisodes) break;
    trainer.begin_episode(episode);
    while (trainer.in_episode()) {
      const auto& p = trainer.act();
      if (learned && p.prev.step == 0) {
        ++dilemma_starts;
        if (p.shield.permitted != ActionSet{Action::South}) ++bad_shields;
      }
      const auto accusation = trainer.oracle_verdict();
      if (accusation && learned) ++further_accusations;
      trainer.resolve(accusation, judge::VerdictSource::Oracle);
      if (accusation && !learned) {
        learned = true;
        first_accusation_episode = episode;
        theory_ok = trainer.theory().same_content(exemplary());
      }
    }
  }
  const bool pass = learned && theory_ok && bad_shields == 0 && dilemma_starts == kFurtherEpisodes &&
                    further_accusations == 0 && trainer.theory().same_content(exemplary());
  return {pass, "first accusation in episode " + std::to_string(first_accusation_episode) + ", theory " +
                    (theory_ok ? "exemplary" : "different") + ", " + std::to_string(bad_shields) + "/" +
                    std::to_string(dilemma_starts) + " later dilemma shields not {south}, " +
                    std::to_string(further_accusations) + " accusations in " + std::to_string(kFurtherEpisodes) +
                    " further episodes"};
}

Outcome oracle_equivalence() {
  std::mt19937 gen(20240601);
  int mismatches = 0;
  std::size_t largest = 0;
  for (int i = 0; i < kOracleTheories; ++i) {
    const auto rt = oracle::random_theory(gen, kOracleMaxAtoms, kOracleMaxRules);
    largest = std::max(largest, rt.theory.rules.size());
    std::vector<std::uint32_t> got;
    for (auto s : logic::Reasoner(rt.theory).proper_scenarios()) got.push_back(s.bits());
    if (got != rt.reference.proper()) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over " + std::to_string(kOracleTheories) +
                               " theories (largest |D| = " + std::to_string(largest) + ")"};
}

/// Persons in the water of `s` for whom, taken alone, a rescue trajectory exists.
std::set<int> rescuable(const realization::Realizer& realizer, const env::WorldState& s) {
  std::set<int> out;
  for (const auto& p : s.persons) {
    if (!p.in_water_since) continue;
    env::WorldState alone = s;
    std::erase_if(alone.persons, [&](const env::Person& q) { return q.in_water_since && q.id != p.id; });
    if (!realizer.first_actions("phi_R", alone).empty()) out.insert(p.id);
  }
  return out;
}

// Exploration is uniform within the shield so that the shield alone has to
// keep the agent safe.
Outcome safety() {
  const auto start = Clock::now();
  int episodes = 0;
  int pushes = 0;
  int unmandated_pushes = 0;
  int owed_rescues = 0;
  int missed_rescues = 0;
  for (auto scene : {env::Constellation::None, env::Constellation::Drowning, env::Constellation::BridgePerson,
                     env::Constellation::Dilemma, env::Constellation::Random}) {
    learn::RunConfig config;
    config.constellation = scene;
    config.episodes = kSafetyEpisodesPerScene;
    config.seed = 7000 + static_cast<std::uint64_t>(scene);
    config.judge = learn::JudgeMode::None;
    config.learn_q = false;
    config.learn_theory = false;
    config.epsilon = 1.0;
    const auto wiring = learn::make_wiring(config, initial_file().vocabulary, initial_file().action_types, {});
    const auto& realizer = wiring.generator.realizer();
    learn::Trainer trainer(config, wiring, exemplary());
    for (int e = 0; e < config.episodes; ++e, ++episodes) {
      trainer.begin_episode(e);
      // Persons who could have been reached in time since the last rescue.
      // A rescue discharges all of them: the agent can pull out one person
      // at a time and the planner goes for the nearest.
      std::set<int> owed;
      std::set<int> reachable;
      while (trainer.in_episode()) {
        const auto& p = trainer.act();
        if (p.labels.contains("D")) {
          for (int id : rescuable(realizer, p.prev)) {
            owed.insert(id);
            owed_rescues += reachable.insert(id).second;
          }
        }
        const auto& ev = p.transition.events;
        if (ev.pushes > 0) {
          pushes += ev.pushes;
          bool mandated = false;
          for (auto i : p.shield.chosen.indices()) mandated |= p.shield.rules[i].conclusion == "phi_R";
          if (!mandated) unmandated_pushes += ev.pushes;
        }
        if (ev.rescues > 0) owed.clear();
        if (ev.drownings > 0) {
          for (const auto& before : p.prev.persons) {
            const bool gone = std::none_of(p.transition.next.persons.begin(), p.transition.next.persons.end(),
                                           [&](const env::Person& q) { return q.id == before.id; });
            if (gone && owed.contains(before.id)) ++missed_rescues;
          }
        }
        trainer.resolve(std::nullopt, judge::VerdictSource::Oracle);
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = unmandated_pushes == 0 && missed_rescues == 0 && elapsed < kSafetyBudgetSeconds;
  return {pass, std::to_string(episodes) + " episodes: " + std::to_string(unmandated_pushes) +
                    " pushes outside a mandated rescue (" + std::to_string(pushes) + " in total), " +
                    std::to_string(missed_rescues) + " of " + std::to_string(owed_rescues) +
                    " reachable persons drowned with no rescue in between, " + std::to_string(elapsed) + "s"};
}

Outcome tie_break() {
  const auto gen = generator();
  const auto s = dilemma_state();
  int waits = 0;
  for (int seed = 0; seed < kTieBreakSeeds; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    waits += gen.generate(initial_file().theory, s, rng).chosen == Scenario::of({0});
  }
  const double share = static_cast<double>(waits) / kTieBreakSeeds;
  const bool pass = std::abs(share - 0.5) <= kTieBreakTolerance && std::abs((1.0 - share) - 0.5) <= kTieBreakTolerance;
  return {pass, "{d1} " + std::to_string(share) + ", {d2} " + std::to_string(1.0 - share)};
}

std::string logged_run(const learn::RunConfig& config) {
  std::ostringstream log;
  runtime::LogWriter writer(log);
  const runtime::LogHeader header{config, initial_file(), exemplary(), std::nullopt};
  writer.header(header);
  const auto wiring = runtime::make_wiring(header);
  learn::run_loop(config, wiring, initial_file().theory, writer.observer());
  return log.str();
}

Outcome replay_determinism() {
  learn::RunConfig config;
  config.constellation = env::Constellation::Random;
  config.episodes = 60;
  config.seed = 31;
  const auto log = logged_run(config);
  const auto body = log.substr(log.find('\n') + 1);
  auto replay_body = [&] {
    std::istringstream in(log);
    const auto report = runtime::replay(in);
    std::string out;
    for (const auto& line : report.body) out += line + "\n";
    return std::pair{report, out};
  };
  const auto [first, first_body] = replay_body();
  const auto [second, second_body] = replay_body();
  const bool pass = first.ok() && second.ok() && first_body == second_body && first_body == body;
  return {pass, std::to_string(first.steps) + " steps, " + std::to_string(first.mismatches + second.mismatches) +
                    " mismatching records, " + std::to_string(first.violations) + " shield violations"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"worked-reasoning-cases", worked_reasoning},
      {"dilemma-shield", dilemma_shield},
      {"dilemma-judge", dilemma_judge},
      {"end-to-end-learning", end_to_end},
      {"oracle-equivalence", oracle_equivalence},
      {"safety", safety},
      {"tie-break-uniformity", tie_break},
      {"replay-determinism", replay_determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}

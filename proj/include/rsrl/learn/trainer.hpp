#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rsrl/common/rng.hpp"
#include "rsrl/env/bridge_world.hpp"
#include "rsrl/judge/moral_judge.hpp"
#include "rsrl/learn/learner.hpp"
#include "rsrl/rl/q_table.hpp"
#include "rsrl/shield/shield.hpp"

namespace rsrl::learn {

enum class JudgeMode { None, Oracle, Human };
std::string_view to_string(JudgeMode m);
JudgeMode parse_judge_mode(std::string_view text);

struct RunConfig {
  env::EnvConfig env;
  rl::QConfig agent;
  env::Constellation constellation = env::Constellation::Dilemma;
  int episodes = 100;
  std::uint64_t seed = 1;
  JudgeMode judge = JudgeMode::Oracle;
  bool learn_q = true;
  bool learn_theory = true;
  /// Overrides the annealing schedule when set.
  std::optional<double> epsilon;
  /// Planning horizon; -1 uses the episode cap.
  int horizon = -1;
  std::size_t scenario_cap = 16;
};

nlohmann::json to_json(const RunConfig& c);
/// Missing fields keep their defaults.
RunConfig run_config_from_json(const nlohmann::json& doc);

struct EpisodeMetrics {
  int episode = 0;
  int steps = 0;
  double return_ = 0.0;
  int accusations = 0;
  int rejected_feedback = 0;
  int pushes = 0;
  int rescues = 0;
  int falls = 0;
  int drownings = 0;
  bool delivered = false;
  std::uint64_t revision = 0;

  friend bool operator==(const EpisodeMetrics&, const EpisodeMetrics&) = default;
};

nlohmann::json to_json(const EpisodeMetrics& m);
std::string metrics_csv_header();
std::string to_csv_row(const EpisodeMetrics& m);

/// One executed step as written to the episode log.
struct StepRecord {
  int episode = 0;
  int t = 0;  // index of the executed action within the episode
  std::string digest;  // state the choice was made in
  env::LabelSet labels;
  nlohmann::json shield;
  env::Action action = env::Action::Idle;
  double reward = 0.0;
  std::optional<judge::Verdict> verdict;
  std::optional<std::string> feedback_error;
  std::uint64_t revision = 0;  // theory revision after feedback
  env::StepEvents events;
  bool terminal = false;
};

nlohmann::json to_json(const StepRecord& r);

/// Everything shared read-only by the episodes of one run.
struct Wiring {
  shield::ShieldGenerator generator;
  std::optional<judge::OracleJudge> oracle;

  const env::BridgeWorld& world() const { return generator.realizer().world(); }
};

/// Builds the default bridge wiring for `config`: the configured world, the
/// default action-type registry and, if `truth` is given, an oracle judge.
Wiring make_wiring(const RunConfig& config, const logic::Vocabulary& vocabulary,
                   const realization::ActionTypeRegistry& registry,
                   const std::optional<logic::ReasonTheory>& truth);

/// Reason-sensitive agent stepping through episodes.
///
/// Each step is split in two: act() picks and executes a shielded action,
/// resolve() takes the judge's verdict, repairs the theory, computes the next
/// shield with the repaired theory and updates Q. Live sessions insert the
/// human judge between the two calls.
class Trainer {
 public:
  struct Observer {
    std::function<void(const StepRecord&)> on_step;
    std::function<void(const logic::ReasonTheory&)> on_theory;
    std::function<void(const EpisodeMetrics&)> on_episode;
  };

  Trainer(RunConfig config, const Wiring& wiring, logic::ReasonTheory initial, rl::QTable q = {});

  const RunConfig& config() const noexcept { return config_; }
  const logic::ReasonTheory& theory() const noexcept { return theory_; }
  const rl::QTable& q() const noexcept { return q_; }
  /// Every accepted theory, starting with the initial one.
  const std::vector<logic::ReasonTheory>& snapshots() const noexcept { return snapshots_; }
  void set_observer(Observer observer) { observer_ = std::move(observer); }

  /// Resets the world for `episode` and computes its first shield.
  void begin_episode(int episode);
  bool in_episode() const noexcept { return in_episode_; }
  bool pending() const noexcept { return pending_.has_value(); }
  int episode() const noexcept { return episode_; }
  const env::WorldState& state() const noexcept { return state_; }
  const shield::Shield& shield() const noexcept { return shield_; }
  const EpisodeMetrics& metrics() const noexcept { return metrics_; }
  /// Exploration rate used in the current episode.
  double epsilon() const;

  struct Pending {
    env::WorldState prev;
    env::LabelSet labels;
    shield::Shield shield;
    env::Action action;
    env::Transition transition;
  };

  /// Selects and executes one action. Throws StateError outside an episode
  /// or while a verdict is pending.
  const Pending& act();
  const std::optional<Pending>& pending_step() const noexcept { return pending_; }

  /// The oracle's verdict on the pending step. Throws ConfigError without an oracle.
  std::optional<judge::Accusation> oracle_verdict() const;

  /// Checks a human accusation against the pending step.
  judge::Screening screen(const judge::Accusation& accusation) const;

  /// Closes the pending step. Rejected feedback is recorded, not thrown.
  StepRecord resolve(std::optional<judge::Accusation> accusation, judge::VerdictSource source);

 private:
  RunConfig config_;
  const Wiring* wiring_;
  logic::ReasonTheory theory_;
  rl::QTable q_;
  std::vector<logic::ReasonTheory> snapshots_;
  Observer observer_;

  int episode_ = -1;
  bool in_episode_ = false;
  env::WorldState state_;
  shield::Shield shield_;
  EpisodeMetrics metrics_;
  Rng env_rng_;
  Rng shield_rng_;
  Rng policy_rng_;
  std::optional<Pending> pending_;
};

/// Seed streams of one episode.
struct EpisodeSeeds {
  std::uint64_t reset;
  std::uint64_t env;
  std::uint64_t shield;
  std::uint64_t policy;
};
EpisodeSeeds episode_seeds(std::uint64_t run_seed, int episode);

struct RunResult {
  logic::ReasonTheory theory;
  rl::QTable q;
  std::vector<EpisodeMetrics> metrics;
  std::vector<logic::ReasonTheory> snapshots;
};

/// The outer training loop with the oracle judge or no judge.
RunResult run_loop(const RunConfig& config, const Wiring& wiring, logic::ReasonTheory initial,
                   Trainer::Observer observer = {}, rl::QTable q = {});

/// Runs `config.episodes` independent episodes with a frozen theory and Q
/// table. Accusations are counted but not learned from.
std::vector<EpisodeMetrics> evaluate(const RunConfig& config, const Wiring& wiring,
                                     const logic::ReasonTheory& theory, const rl::QTable& q);
/// Serial reference for evaluate(); results are identical.
std::vector<EpisodeMetrics> evaluate_serial(const RunConfig& config, const Wiring& wiring,
                                            const logic::ReasonTheory& theory, const rl::QTable& q);

}  // namespace rsrl::learn

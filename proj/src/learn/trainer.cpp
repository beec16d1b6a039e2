#include "rsrl/learn/trainer.hpp"

#include <exception>
#include <sstream>

#include "rsrl/common/error.hpp"

namespace rsrl::learn {

using nlohmann::json;

std::string_view to_string(JudgeMode m) {
  switch (m) {
    case JudgeMode::None: return "none";
    case JudgeMode::Oracle: return "oracle";
    case JudgeMode::Human: return "human";
  }
  return "none";
}

JudgeMode parse_judge_mode(std::string_view text) {
  if (text == "none") return JudgeMode::None;
  if (text == "oracle") return JudgeMode::Oracle;
  if (text == "human") return JudgeMode::Human;
  throw InputError("unknown judge mode '" + std::string(text) + "'");
}

json to_json(const RunConfig& c) {
  return {{"env", env::to_json(c.env)},
          {"agent", rl::to_json(c.agent)},
          {"constellation", env::to_string(c.constellation)},
          {"episodes", c.episodes},
          {"seed", c.seed},
          {"judge", to_string(c.judge)},
          {"learn_q", c.learn_q},
          {"learn_theory", c.learn_theory},
          {"epsilon", c.epsilon ? json(*c.epsilon) : json(nullptr)},
          {"horizon", c.horizon},
          {"scenario_cap", c.scenario_cap}};
}

RunConfig run_config_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("run config must be an object");
  RunConfig c;
  try {
    if (doc.contains("env")) c.env = env::env_config_from_json(doc.at("env"));
    if (doc.contains("agent")) c.agent = rl::q_config_from_json(doc.at("agent"));
    if (doc.contains("constellation")) {
      c.constellation = env::parse_constellation(doc.at("constellation").get<std::string>());
    }
    c.episodes = doc.value("episodes", c.episodes);
    c.seed = doc.value("seed", c.seed);
    if (doc.contains("judge")) c.judge = parse_judge_mode(doc.at("judge").get<std::string>());
    c.learn_q = doc.value("learn_q", c.learn_q);
    c.learn_theory = doc.value("learn_theory", c.learn_theory);
    if (doc.contains("epsilon") && !doc.at("epsilon").is_null()) c.epsilon = doc.at("epsilon").get<double>();
    c.horizon = doc.value("horizon", c.horizon);
    c.scenario_cap = doc.value("scenario_cap", c.scenario_cap);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad run config: ") + e.what());
  }
  if (c.episodes < 0) throw InputError("episodes must be non-negative");
  if (c.epsilon && (*c.epsilon < 0.0 || *c.epsilon > 1.0)) throw InputError("epsilon must lie in [0, 1]");
  if (c.horizon < -1) throw InputError("horizon must be -1 or non-negative");
  return c;
}

json to_json(const EpisodeMetrics& m) {
  return {{"episode", m.episode},     {"steps", m.steps},         {"return", m.return_},
          {"accusations", m.accusations}, {"rejected_feedback", m.rejected_feedback},
          {"pushes", m.pushes},       {"rescues", m.rescues},     {"falls", m.falls},
          {"drownings", m.drownings}, {"delivered", m.delivered}, {"revision", m.revision}};
}

std::string metrics_csv_header() {
  return "episode,steps,return,accusations,rejected_feedback,pushes,rescues,falls,drownings,delivered,revision";
}

std::string to_csv_row(const EpisodeMetrics& m) {
  std::ostringstream out;
  out << m.episode << ',' << m.steps << ',' << json(m.return_).dump() << ',' << m.accusations << ','
      << m.rejected_feedback << ',' << m.pushes << ',' << m.rescues << ',' << m.falls << ',' << m.drownings << ','
      << (m.delivered ? 1 : 0) << ',' << m.revision;
  return out.str();
}

json to_json(const StepRecord& r) {
  json events = {{"pushes", r.events.pushes},
                 {"rescues", r.events.rescues},
                 {"falls", r.events.falls},
                 {"drownings", r.events.drownings},
                 {"delivered", r.events.delivered}};
  json labels = json::array();
  for (const auto& l : r.labels.items()) labels.push_back(l);
  return {{"episode", r.episode},
          {"t", r.t},
          {"digest", r.digest},
          {"labels", std::move(labels)},
          {"shield", r.shield},
          {"action", env::to_string(r.action)},
          {"reward", r.reward},
          {"verdict", r.verdict ? judge::to_json(*r.verdict) : json(nullptr)},
          {"feedback_error", r.feedback_error ? json(*r.feedback_error) : json(nullptr)},
          {"revision", r.revision},
          {"events", std::move(events)},
          {"terminal", r.terminal}};
}

Wiring make_wiring(const RunConfig& config, const logic::Vocabulary& vocabulary,
                   const realization::ActionTypeRegistry& registry,
                   const std::optional<logic::ReasonTheory>& truth) {
  realization::Realizer realizer(env::BridgeWorld(config.env), registry, config.horizon);
  shield::ShieldGenerator generator(std::move(realizer), vocabulary, {config.scenario_cap});
  Wiring w{generator, std::nullopt};
  if (truth) w.oracle.emplace(*truth, generator);
  return w;
}

EpisodeSeeds episode_seeds(std::uint64_t run_seed, int episode) {
  const auto e = static_cast<std::uint64_t>(episode);
  return {derive_seed(run_seed, e, 0), derive_seed(run_seed, e, 1), derive_seed(run_seed, e, 2),
          derive_seed(run_seed, e, 3)};
}

Trainer::Trainer(RunConfig config, const Wiring& wiring, logic::ReasonTheory initial, rl::QTable q)
    : config_(std::move(config)), wiring_(&wiring), theory_(std::move(initial)), q_(std::move(q)) {
  if (config_.judge == JudgeMode::Oracle && !wiring_->oracle) {
    throw ConfigError("oracle judge requested but no ground-truth theory is loaded");
  }
  logic::DefaultTheory::extend(wiring_->generator.vocabulary(), {}, theory_).validate();
  snapshots_.push_back(theory_);
}

double Trainer::epsilon() const {
  if (config_.epsilon) return *config_.epsilon;
  return rl::epsilon_at(config_.agent, episode_, config_.episodes);
}

void Trainer::begin_episode(int episode) {
  if (pending_) throw StateError("cannot start an episode while a verdict is pending");
  const auto seeds = episode_seeds(config_.seed, episode);
  episode_ = episode;
  env_rng_ = Rng(seeds.env);
  shield_rng_ = Rng(seeds.shield);
  policy_rng_ = Rng(seeds.policy);
  state_ = wiring_->world().reset(seeds.reset, config_.constellation);
  shield_ = wiring_->generator.generate(theory_, state_, shield_rng_);
  metrics_ = EpisodeMetrics{};
  metrics_.episode = episode;
  metrics_.revision = theory_.revision;
  in_episode_ = true;
}

const Trainer::Pending& Trainer::act() {
  if (!in_episode_) throw StateError("no episode in progress");
  if (pending_) throw StateError("a verdict is pending for step " + std::to_string(pending_->prev.step));
  const auto key = rl::state_key(state_, wiring_->world(), config_.agent);
  const auto a = rl::select_action(q_, key, shield_.permitted, epsilon(), policy_rng_);
  auto transition = wiring_->world().step(state_, a, env_rng_);
  pending_ = Pending{state_, shield_.labels, shield_, a, std::move(transition)};
  return *pending_;
}

std::optional<judge::Accusation> Trainer::oracle_verdict() const {
  if (!pending_) throw StateError("no step is pending");
  if (!wiring_->oracle) throw ConfigError("no oracle judge is configured");
  return wiring_->oracle->judge(pending_->prev, pending_->labels, pending_->action);
}

judge::Screening Trainer::screen(const judge::Accusation& accusation) const {
  if (!pending_) throw StateError("no step is pending");
  return judge::screen_accusation(accusation, pending_->prev, pending_->labels, pending_->action, theory_,
                                  pending_->shield.chosen_ids(), wiring_->generator);
}

StepRecord Trainer::resolve(std::optional<judge::Accusation> accusation, judge::VerdictSource source) {
  if (!pending_) throw StateError("no step is pending");
  Pending p = std::move(*pending_);
  pending_.reset();

  StepRecord record;
  record.episode = episode_;
  record.t = p.prev.step;
  record.digest = env::digest(p.prev);
  record.labels = p.labels;
  record.shield = shield::to_json(p.shield);
  record.action = p.action;
  record.reward = p.transition.reward;
  record.events = p.transition.events;
  record.terminal = p.transition.terminal;
  if (config_.judge != JudgeMode::None) record.verdict = judge::Verdict{record.t, accusation, source};

  if (accusation) {
    ++metrics_.accusations;
    if (config_.learn_theory) {
      try {
        auto next = apply_feedback(theory_, wiring_->generator.vocabulary(),
                                   Feedback{*accusation, record.digest, p.shield.chosen_ids(), record.t});
        if (next.revision != theory_.revision) {
          theory_ = std::move(next);
          snapshots_.push_back(theory_);
          if (observer_.on_theory) observer_.on_theory(theory_);
        }
      } catch (const InconsistentFeedbackError& e) {
        record.feedback_error = e.what();
        ++metrics_.rejected_feedback;
      } catch (const InputError& e) {
        record.feedback_error = e.what();
        ++metrics_.rejected_feedback;
      }
    }
  }
  record.revision = theory_.revision;

  ++metrics_.steps;
  metrics_.return_ += p.transition.reward;
  metrics_.pushes += p.transition.events.pushes;
  metrics_.rescues += p.transition.events.rescues;
  metrics_.falls += p.transition.events.falls;
  metrics_.drownings += p.transition.events.drownings;
  metrics_.delivered = metrics_.delivered || p.transition.events.delivered;
  metrics_.revision = theory_.revision;

  state_ = std::move(p.transition.next);
  if (p.transition.terminal) {
    in_episode_ = false;
  } else {
    // The next shield already reflects the repaired theory.
    shield_ = wiring_->generator.generate(theory_, state_, shield_rng_);
  }

  if (config_.learn_q) {
    const auto& world = wiring_->world();
    rl::update(q_, rl::state_key(p.prev, world, config_.agent), p.action, p.transition.reward,
               rl::state_key(state_, world, config_.agent), shield_.permitted, p.transition.terminal,
               config_.agent.alpha, config_.agent.gamma);
  }

  if (observer_.on_step) observer_.on_step(record);
  if (!in_episode_ && observer_.on_episode) observer_.on_episode(metrics_);
  return record;
}

RunResult run_loop(const RunConfig& config, const Wiring& wiring, logic::ReasonTheory initial,
                   Trainer::Observer observer, rl::QTable q) {
  if (config.judge == JudgeMode::Human) throw ConfigError("the batch loop cannot wait for a human judge");
  Trainer trainer(config, wiring, std::move(initial), std::move(q));
  trainer.set_observer(std::move(observer));
  RunResult result;
  for (int e = 0; e < config.episodes; ++e) {
    trainer.begin_episode(e);
    while (trainer.in_episode()) {
      trainer.act();
      std::optional<judge::Accusation> accusation;
      if (config.judge == JudgeMode::Oracle) accusation = trainer.oracle_verdict();
      trainer.resolve(accusation, judge::VerdictSource::Oracle);
    }
    result.metrics.push_back(trainer.metrics());
  }
  result.theory = trainer.theory();
  result.q = trainer.q();
  result.snapshots = trainer.snapshots();
  return result;
}

namespace {

RunConfig frozen(RunConfig config) {
  config.learn_q = false;
  config.learn_theory = false;
  if (config.judge == JudgeMode::Human) config.judge = JudgeMode::None;
  if (!config.epsilon) config.epsilon = 0.0;
  return config;
}

EpisodeMetrics evaluate_episode(const RunConfig& config, const Wiring& wiring, const logic::ReasonTheory& theory,
                                const rl::QTable& q, int episode) {
  Trainer trainer(config, wiring, theory, q);
  trainer.begin_episode(episode);
  while (trainer.in_episode()) {
    trainer.act();
    std::optional<judge::Accusation> accusation;
    if (config.judge == JudgeMode::Oracle) accusation = trainer.oracle_verdict();
    trainer.resolve(accusation, judge::VerdictSource::Oracle);
  }
  return trainer.metrics();
}

}  // namespace

std::vector<EpisodeMetrics> evaluate(const RunConfig& config, const Wiring& wiring,
                                     const logic::ReasonTheory& theory, const rl::QTable& q) {
  const RunConfig c = frozen(config);
  std::vector<EpisodeMetrics> out(static_cast<std::size_t>(std::max(c.episodes, 0)));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int e = 0; e < c.episodes; ++e) {
    try {
      out[static_cast<std::size_t>(e)] = evaluate_episode(c, wiring, theory, q, e);
    } catch (...) {
#pragma omp critical(rsrl_evaluate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<EpisodeMetrics> evaluate_serial(const RunConfig& config, const Wiring& wiring,
                                            const logic::ReasonTheory& theory, const rl::QTable& q) {
  const RunConfig c = frozen(config);
  std::vector<EpisodeMetrics> out;
  for (int e = 0; e < c.episodes; ++e) out.push_back(evaluate_episode(c, wiring, theory, q, e));
  return out;
}

}  // namespace rsrl::learn

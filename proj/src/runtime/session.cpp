#include "rsrl/runtime/session.hpp"

#include "rsrl/common/error.hpp"
#include "rsrl/logic/theory_json.hpp"

namespace rsrl::runtime {

using nlohmann::json;

std::string_view to_string(SessionMode m) { return m == SessionMode::BatchOracle ? "batch-oracle" : "live-human"; }

SessionMode parse_session_mode(std::string_view text) {
  if (text == "batch-oracle") return SessionMode::BatchOracle;
  if (text == "live-human") return SessionMode::LiveHuman;
  throw InputError("unknown session mode '" + std::string(text) + "'");
}

json error_body(std::string_view kind, std::string_view message) {
  return {{"error", std::string(kind)}, {"message", std::string(message)}};
}

namespace {

learn::RunConfig session_config(SessionOptions& options) {
  options.config.judge =
      options.mode == SessionMode::BatchOracle ? learn::JudgeMode::Oracle : learn::JudgeMode::Human;
  return options.config;
}

}  // namespace

Session::Session(std::string id, SessionOptions options)
    : id_(std::move(id)),
      options_(std::move(options)),
      wiring_(learn::make_wiring(session_config(options_), options_.theory.vocabulary, options_.theory.action_types,
                                 options_.truth)),
      trainer_(options_.config, wiring_, options_.theory.theory),
      writer_(log_) {
  writer_.header(LogHeader{options_.config, options_.theory, options_.truth, std::nullopt});
  trainer_.set_observer({[this](const learn::StepRecord& r) {
                           writer_.line(step_line(r));
                           json rec = learn::to_json(r);
                           history_.push_back(rec);
                           json msg = envelope("step");
                           msg["t"] = r.t;
                           msg["record"] = std::move(rec);
                           publish(std::move(msg));
                         },
                         [this](const logic::ReasonTheory& t) {
                           writer_.line(theory_line(t));
                           json msg = envelope("theory");
                           msg["theory"] = logic::to_json(t);
                           publish(std::move(msg));
                         },
                         [this](const learn::EpisodeMetrics& m) {
                           writer_.line(episode_line(m));
                           json msg = envelope("episode");
                           msg["metrics"] = learn::to_json(m);
                           publish(std::move(msg));
                         }});
}

json Session::envelope(std::string_view type) const {
  const auto& p = trainer_.pending_step();
  return {{"type", std::string(type)},
          {"session", id_},
          {"episode", trainer_.episode()},
          {"t", p ? p->prev.step : trainer_.state().step},
          {"revision", trainer_.theory().revision}};
}

json Session::pending_view() const {
  const auto& p = *trainer_.pending_step();
  json labels = json::array();
  for (const auto& l : p.labels.items()) labels.push_back(l);
  json view = envelope("pending");
  view["pending"] = true;
  view["state"] = env::to_json(p.prev);
  view["next_state"] = env::to_json(p.transition.next);
  view["labels"] = std::move(labels);
  view["shield"] = shield::to_json(p.shield);
  view["action"] = env::to_string(p.action);
  view["reward"] = p.transition.reward;
  view["terminal"] = p.transition.terminal;
  return view;
}

void Session::publish(json message) {
  events_.push_back(message.dump());
  changed_.notify_all();
}

void Session::expire_pending() {
  if (!pending_since_ || options_.verdict_timeout.count() == 0) return;
  if (std::chrono::steady_clock::now() - *pending_since_ < options_.verdict_timeout) return;
  pending_since_.reset();
  trainer_.resolve(std::nullopt, judge::VerdictSource::Human);
}

Reply Session::step() {
  std::lock_guard lock(mu_);
  expire_pending();
  if (trainer_.pending()) {
    return {409, error_body("state", "step " + std::to_string(trainer_.pending_step()->prev.step) +
                                         " is waiting for a verdict")};
  }
  if (!trainer_.in_episode()) {
    if (next_episode_ >= options_.config.episodes) return {409, error_body("state", "all episodes are finished")};
    trainer_.begin_episode(next_episode_++);
  }
  trainer_.act();
  json view = pending_view();
  if (options_.mode == SessionMode::LiveHuman) {
    pending_since_ = std::chrono::steady_clock::now();
    publish(view);
    return {200, view};
  }
  const auto accusation = trainer_.oracle_verdict();
  const auto record = trainer_.resolve(accusation, judge::VerdictSource::Oracle);
  view["type"] = "step";
  view["pending"] = false;
  view["record"] = learn::to_json(record);
  view["revision"] = trainer_.theory().revision;
  return {200, view};
}

Reply Session::verdict(const json& body) {
  std::lock_guard lock(mu_);
  expire_pending();
  if (!body.is_object() || !body.contains("t") || !body.at("t").is_number_integer()) {
    return {400, error_body("input", "verdict needs an integer field 't'")};
  }
  const auto string_or_null = [&](const char* key) {
    return !body.contains(key) || body.at(key).is_null() || body.at(key).is_string();
  };
  if (!string_or_null("obligation") || !string_or_null("reason")) {
    return {400, error_body("input", "'obligation' and 'reason' must be strings or null")};
  }
  const bool has_obligation = body.contains("obligation") && body.at("obligation").is_string();
  const bool has_reason = body.contains("reason") && body.at("reason").is_string();
  if (has_obligation != has_reason) {
    return {400, error_body("input", "an accusation needs both an obligation and a reason")};
  }
  if (!trainer_.pending()) return {409, error_body("state", "no step is waiting for a verdict")};
  const int t = body.at("t").get<int>();
  if (t != trainer_.pending_step()->prev.step) {
    return {409, error_body("state", "step " + std::to_string(t) + " is not pending; step " +
                                         std::to_string(trainer_.pending_step()->prev.step) + " is")};
  }

  std::optional<judge::Accusation> accusation;
  if (has_obligation) {
    accusation = judge::Accusation{normalize_atom(body.at("obligation").get<std::string>()),
                                   normalize_atom(body.at("reason").get<std::string>())};
    const auto screening = trainer_.screen(*accusation);
    if (!screening.accepted) return {400, error_body("rejected", screening.reason)};
  }
  pending_since_.reset();
  const auto before = trainer_.theory().revision;
  const auto record = trainer_.resolve(accusation, judge::VerdictSource::Human);
  json reply = envelope("verdict");
  reply["t"] = t;
  reply["accepted"] = true;
  reply["theory_changed"] = trainer_.theory().revision != before;
  reply["record"] = learn::to_json(record);
  return {200, reply};
}

Reply Session::status() {
  std::lock_guard lock(mu_);
  expire_pending();
  json s = envelope("status");
  s["mode"] = to_string(options_.mode);
  s["pending"] = trainer_.pending();
  s["in_episode"] = trainer_.in_episode();
  s["episodes_started"] = next_episode_;
  s["state"] = trainer_.pending() ? env::to_json(trainer_.pending_step()->prev) : env::to_json(trainer_.state());
  if (trainer_.pending()) s["step"] = pending_view();
  return {200, s};
}

Reply Session::theory() const {
  std::lock_guard lock(mu_);
  json doc = envelope("theory");
  doc["theory"] = logic::to_json(trainer_.theory());
  json snapshots = json::array();
  for (const auto& t : trainer_.snapshots()) snapshots.push_back(logic::to_json(t));
  doc["snapshots"] = std::move(snapshots);
  doc["atoms"] = logic::to_json(options_.theory.vocabulary);
  return {200, doc};
}

Reply Session::history() const {
  std::lock_guard lock(mu_);
  json doc = envelope("history");
  doc["records"] = history_;
  return {200, doc};
}

std::string Session::log() const {
  std::lock_guard lock(mu_);
  return log_.str();
}

std::vector<std::string> Session::events_since(std::size_t from, std::chrono::milliseconds wait) const {
  std::unique_lock lock(mu_);
  changed_.wait_for(lock, wait, [&] { return events_.size() > from; });
  if (from >= events_.size()) return {};
  return {events_.begin() + static_cast<std::ptrdiff_t>(from), events_.end()};
}

std::size_t Session::event_count() const {
  std::lock_guard lock(mu_);
  return events_.size();
}

SessionManager::SessionManager(TheoryFile default_theory, std::optional<logic::ReasonTheory> default_truth,
                               learn::RunConfig default_config)
    : default_theory_(std::move(default_theory)),
      default_truth_(std::move(default_truth)),
      default_config_(std::move(default_config)) {}

Reply SessionManager::create(const json& body) {
  if (!body.is_object()) return {400, error_body("input", "session request must be a JSON object")};
  try {
    SessionOptions options;
    options.mode = parse_session_mode(body.value("mode", std::string("live-human")));
    options.config = body.contains("config") ? learn::run_config_from_json(body.at("config")) : default_config_;
    options.theory = body.contains("theory") ? theory_file_from_json(body.at("theory")) : default_theory_;
    options.truth = default_truth_;
    if (body.contains("truth")) {
      options.truth = body.at("truth").is_null() ? std::nullopt
                                                 : std::optional(logic::reason_theory_from_json(body.at("truth")));
    }
    const auto timeout = body.value("verdict_timeout_ms", 0);
    if (timeout < 0) throw InputError("verdict_timeout_ms must be non-negative");
    options.verdict_timeout = std::chrono::milliseconds(timeout);

    const auto revision = options.theory.theory.revision;
    std::lock_guard lock(mu_);
    const std::string id = "s" + std::to_string(++counter_);
    auto session = std::make_shared<Session>(id, std::move(options));
    sessions_.emplace(id, session);
    return {201, {{"session", id}, {"mode", to_string(session->mode())}, {"revision", revision}, {"t", 0}}};
  } catch (const Error& e) {
    return {400, error_body(e.kind(), e.what())};
  } catch (const json::exception& e) {
    return {400, error_body("input", e.what())};
  }
}

std::shared_ptr<Session> SessionManager::find(std::string_view id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::vector<std::string> SessionManager::ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

}  // namespace rsrl::runtime

#pragma once

#include <chrono>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rsrl/learn/trainer.hpp"
#include "rsrl/runtime/episode_log.hpp"
#include "rsrl/runtime/files.hpp"

namespace rsrl::runtime {

enum class SessionMode { BatchOracle, LiveHuman };
std::string_view to_string(SessionMode m);
SessionMode parse_session_mode(std::string_view text);

struct SessionOptions {
  SessionMode mode = SessionMode::LiveHuman;
  learn::RunConfig config;
  TheoryFile theory;
  std::optional<logic::ReasonTheory> truth;
  /// Zero waits for a verdict forever.
  std::chrono::milliseconds verdict_timeout{0};
};

/// Status code plus JSON body, independent of the transport.
struct Reply {
  int status = 200;
  nlohmann::json body;
};

nlohmann::json error_body(std::string_view kind, std::string_view message);

/// One agent run driven by requests.
///
/// In live-human mode every step stops after the action has been executed
/// and waits for a verdict; batch-oracle steps are judged immediately.
/// Commands on one session are serialized by its mutex.
class Session {
 public:
  Session(std::string id, SessionOptions options);

  const std::string& id() const noexcept { return id_; }
  SessionMode mode() const noexcept { return options_.mode; }

  Reply step();
  /// Body: {"t": int, "obligation": string|null, "reason": string|null}.
  Reply verdict(const nlohmann::json& body);
  Reply status();
  Reply theory() const;
  Reply history() const;

  /// Full JSON-Lines log of the session so far.
  std::string log() const;

  /// Push messages with index >= `from`, waiting up to `wait` if there are none.
  std::vector<std::string> events_since(std::size_t from, std::chrono::milliseconds wait) const;
  std::size_t event_count() const;

 private:
  nlohmann::json envelope(std::string_view type) const;
  nlohmann::json pending_view() const;
  void expire_pending();
  void publish(nlohmann::json message);

  std::string id_;
  SessionOptions options_;
  learn::Wiring wiring_;
  learn::Trainer trainer_;
  int next_episode_ = 0;
  std::optional<std::chrono::steady_clock::time_point> pending_since_;
  std::vector<nlohmann::json> history_;
  std::ostringstream log_;
  LogWriter writer_;

  mutable std::mutex mu_;
  mutable std::condition_variable changed_;
  std::vector<std::string> events_;
};

/// Owns all sessions; lookups and creation are thread-safe.
class SessionManager {
 public:
  /// Defaults used when a creation request leaves fields out.
  SessionManager(TheoryFile default_theory, std::optional<logic::ReasonTheory> default_truth,
                 learn::RunConfig default_config = {});

  /// Body fields (all optional): mode, config, theory, truth, verdict_timeout_ms.
  Reply create(const nlohmann::json& body);
  std::shared_ptr<Session> find(std::string_view id) const;
  std::vector<std::string> ids() const;

 private:
  TheoryFile default_theory_;
  std::optional<logic::ReasonTheory> default_truth_;
  learn::RunConfig default_config_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>, std::less<>> sessions_;
  int counter_ = 0;
};

}  // namespace rsrl::runtime

#pragma once

#include <memory>
#include <string>

#include "rsrl/runtime/session.hpp"

namespace httplib {
class Server;
}

namespace rsrl::runtime {

/// HTTP front end for a SessionManager. Endpoints:
///   POST /sessions                      create a session
///   GET  /sessions                      list session ids
///   GET  /sessions/{id}                 status, including a pending step
///   POST /sessions/{id}/step            execute one action
///   POST /sessions/{id}/verdict         judge the pending step
///   GET  /sessions/{id}/theory          current theory and snapshots
///   GET  /sessions/{id}/history         step records so far
///   GET  /sessions/{id}/log             JSON-Lines episode log
///   GET  /sessions/{id}/events?from=N   server-sent events, one per message
class Service {
 public:
  explicit Service(SessionManager& sessions);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  bool listen();
  void stop();
  bool running() const;

 private:
  SessionManager& sessions_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace rsrl::runtime

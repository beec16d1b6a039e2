#include "rsrl/runtime/service.hpp"

#include <httplib.h>

#include "rsrl/common/error.hpp"

namespace rsrl::runtime {

using nlohmann::json;

namespace {

constexpr auto kPushWait = std::chrono::milliseconds(250);

void send(httplib::Response& res, const Reply& reply) {
  res.status = reply.status;
  res.set_content(reply.body.dump(), "application/json");
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

Service::Service(SessionManager& sessions) : sessions_(sessions), server_(std::make_unique<httplib::Server>()) {
  auto& srv = *server_;

  // Wraps a per-session handler with lookup and uniform error replies.
  auto with_session = [this](auto handler) {
    return [this, handler](const httplib::Request& req, httplib::Response& res) {
      auto session = sessions_.find(req.path_params.at("id"));
      if (!session) return send(res, {404, error_body("not-found", "no session '" + req.path_params.at("id") + "'")});
      try {
        handler(*session, req, res);
      } catch (const json::exception& e) {
        send(res, {400, error_body("input", e.what())});
      } catch (const InputError& e) {
        send(res, {400, error_body(e.kind(), e.what())});
      } catch (const StateError& e) {
        send(res, {409, error_body(e.kind(), e.what())});
      } catch (const Error& e) {
        send(res, {500, error_body(e.kind(), e.what())});
      }
    };
  };

  srv.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      send(res, sessions_.create(parse_body(req)));
    } catch (const json::exception& e) {
      send(res, {400, error_body("input", e.what())});
    }
  });
  srv.Get("/sessions", [this](const httplib::Request&, httplib::Response& res) {
    send(res, {200, {{"sessions", sessions_.ids()}}});
  });
  srv.Get("/sessions/:id", with_session([](Session& s, const httplib::Request&, httplib::Response& res) {
            send(res, s.status());
          }));
  srv.Post("/sessions/:id/step", with_session([](Session& s, const httplib::Request&, httplib::Response& res) {
             send(res, s.step());
           }));
  srv.Post("/sessions/:id/verdict", with_session([](Session& s, const httplib::Request& req, httplib::Response& res) {
             send(res, s.verdict(parse_body(req)));
           }));
  srv.Get("/sessions/:id/theory", with_session([](Session& s, const httplib::Request&, httplib::Response& res) {
            send(res, s.theory());
          }));
  srv.Get("/sessions/:id/history", with_session([](Session& s, const httplib::Request&, httplib::Response& res) {
            send(res, s.history());
          }));
  srv.Get("/sessions/:id/log", with_session([](Session& s, const httplib::Request&, httplib::Response& res) {
            res.set_content(s.log(), "application/x-ndjson");
          }));
  srv.Get("/sessions/:id/events", [this](const httplib::Request& req, httplib::Response& res) {
    auto session = sessions_.find(req.path_params.at("id"));
    if (!session) return send(res, {404, error_body("not-found", "no session '" + req.path_params.at("id") + "'")});
    std::size_t from = 0;
    if (req.has_param("from")) {
      try {
        from = std::stoul(req.get_param_value("from"));
      } catch (const std::exception&) {
        return send(res, {400, error_body("input", "'from' must be a non-negative integer")});
      }
    }
    auto cursor = std::make_shared<std::size_t>(from);
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider("text/event-stream", [session, cursor, this](std::size_t, httplib::DataSink& sink) {
      if (!server_->is_running()) return false;
      for (const auto& message : session->events_since(*cursor, kPushWait)) {
        const std::string frame = "id: " + std::to_string(*cursor) + "\ndata: " + message + "\n\n";
        if (!sink.write(frame.data(), frame.size())) return false;
        ++*cursor;
      }
      return sink.is_writable();
    });
  });
}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool Service::listen() { return server_->listen_after_bind(); }

void Service::stop() {
  if (server_) server_->stop();
}

bool Service::running() const { return server_->is_running(); }

}  // namespace rsrl::runtime

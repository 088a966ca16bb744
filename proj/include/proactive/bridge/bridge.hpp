#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "proactive/pddl/scenario.hpp"
#include "proactive/select/select.hpp"
#include "proactive/sim/session.hpp"

namespace httplib {
class Server;
}

namespace proactive {

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// HTTP+JSON view over one simulation session. handle() is transport-free;
/// serve() binds it to a socket.
///
/// Mutations (/step, /mode, /reset) never interleave: a mutation arriving
/// while another is in flight gets 409. Reads run concurrently with each
/// other and wait for a running mutation to finish.
class Bridge {
 public:
  inline static const std::string kSessionId = "default";

  Bridge(const pddl::ScenarioFile& scenario, RunMode mode, std::optional<std::uint32_t> seed = std::nullopt);
  ~Bridge();

  Bridge(const Bridge&) = delete;
  Bridge& operator=(const Bridge&) = delete;

  /// `target` is the request path with an optional query string; a `session`
  /// query parameter other than the default session id yields 404.
  HttpResponse handle(std::string_view method, std::string_view target, std::string_view body);

  /// Binds the listening socket and returns the bound port; port 0 picks a
  /// free one. Throws Error when the address cannot be bound.
  int bind(const std::string& host, int port);
  /// Serves on the bound socket until stop().
  void listen();
  /// bind() then listen().
  void serve(const std::string& host, int port);
  void stop();
  bool running() const;

  /// Holds the mutation lock, as an in-flight mutation would.
  std::unique_lock<std::mutex> hold_mutation_lock() { return std::unique_lock<std::mutex>(mutation_); }

  const Session& session() const noexcept { return session_; }

 private:
  HttpResponse mutate(std::string_view path, std::string_view body);
  HttpResponse read(std::string_view path) const;

  std::shared_ptr<const Knowledge> knowledge_;
  std::string initial_state_;
  Session session_;
  mutable std::shared_mutex data_;
  std::mutex mutation_;
  std::unique_ptr<httplib::Server> server_;
};

/// The origin to echo in Access-Control-Allow-Origin: loopback origins only.
std::optional<std::string> allowed_origin(std::string_view origin);

}  // namespace proactive

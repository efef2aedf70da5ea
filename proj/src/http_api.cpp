#include "sixbox/http_api.hpp"

#include <regex>

#include <httplib.h>

#include "sixbox/error.hpp"

namespace sixbox {

namespace {

ApiResponse error_response(int status, const std::string& message) {
  return ApiResponse{status, Json{{"error", message}}};
}

Json parse_body(const std::string& body, bool allow_empty) {
  if (body.empty() || body.find_first_not_of(" \t\r\n") == std::string::npos) {
    if (allow_empty) return Json::object();
    throw DomainError("request body is required");
  }
  Json j;
  try {
    j = Json::parse(body);
  } catch (const Json::exception&) {
    throw DomainError("request body is not valid JSON");
  }
  if (!j.is_object()) throw DomainError("request body must be a JSON object");
  return j;
}

ApiResponse create_session(SessionManager& sessions, const std::string& body) {
  const Json j = parse_body(body, true);
  std::optional<std::uint64_t> seed;
  if (j.contains("seed") && !j["seed"].is_null()) {
    if (!j["seed"].is_number_unsigned()) throw DomainError("seed must be a nonnegative integer");
    seed = j["seed"].get<std::uint64_t>();
  }
  SpaceConfig config;
  if (j.contains("space") && !j["space"].is_null()) config = space_config_from_json(j["space"]);
  const auto created = sessions.create(seed, config);
  return ApiResponse{200, Json{{"session_id", created.session_id},
                               {"belief", to_json(created.belief)},
                               {"predictive", created.predictive}}};
}

ApiResponse draw(SessionManager& sessions, const std::string& id) {
  const auto out = sessions.draw(id);
  return ApiResponse{200, Json{{"color", to_string(out.color)},
                               {"belief", to_json(out.belief_after)},
                               {"predictive", out.predictive_after},
                               {"draw_index", out.draw_index}}};
}

ApiResponse state(SessionManager& sessions, const std::string& id) {
  Json j = to_json(sessions.state(id));
  j.erase("session_id");
  return ApiResponse{200, std::move(j)};
}

ApiResponse lottery(SessionManager& sessions, const std::string& id, const std::string& body) {
  const Json j = parse_body(body, false);
  if (!j.contains("winning_color") || !j["winning_color"].is_string()) {
    throw DomainError("winning_color must be \"W\" or \"B\"");
  }
  if (!j.contains("choice") || !j["choice"].is_string()) throw DomainError("choice is required");
  const LotteryScenario scenario{parse_color(j["winning_color"].get<std::string>())};
  const LotteryOption choice = parse_lottery_option(j["choice"].get<std::string>());
  const auto out = sessions.lottery(id, scenario, choice);
  return ApiResponse{200, Json{{"expected_values", to_json(out.expected_values)}, {"recorded", to_json(out.recorded)}}};
}

ApiResponse end(SessionManager& sessions, const std::string& id) {
  return ApiResponse{200, Json{{"summary", to_json(sessions.end(id))}}};
}

}  // namespace

ApiResponse handle_request(SessionManager& sessions, const ApiRequest& request) {
  static const std::regex kCollection(R"(^/sessions/?$)");
  static const std::regex kMember(R"(^/sessions/([A-Za-z0-9_-]+)(?:/(draw|lottery|end))?/?$)");
  try {
    std::smatch m;
    if (std::regex_match(request.path, kCollection)) {
      if (request.method != "POST") return error_response(405, "method not allowed");
      return create_session(sessions, request.body);
    }
    if (std::regex_match(request.path, m, kMember)) {
      const std::string id = m[1];
      const std::string action = m[2];
      if (action.empty()) {
        if (request.method != "GET") return error_response(405, "method not allowed");
        return state(sessions, id);
      }
      if (request.method != "POST") return error_response(405, "method not allowed");
      if (action == "draw") return draw(sessions, id);
      if (action == "lottery") return lottery(sessions, id, request.body);
      return end(sessions, id);
    }
    return error_response(404, "no route for " + request.path);
  } catch (const NotFoundError& e) {
    return error_response(404, e.what());
  } catch (const SessionClosedError& e) {
    return error_response(409, e.what());
  } catch (const DomainError& e) {
    return error_response(400, e.what());
  } catch (const ConfigError& e) {
    return error_response(400, e.what());
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
}

struct HttpServer::Impl {
  explicit Impl(SessionManager& s) : sessions(s) {}
  SessionManager& sessions;
  httplib::Server server;
};

HttpServer::HttpServer(SessionManager& sessions) : impl_(std::make_unique<Impl>(sessions)) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse out = handle_request(impl_->sessions, ApiRequest{req.method, req.path, req.body});
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json; charset=utf-8");
  };
  impl_->server.Get(R"(/.*)", forward);
  impl_->server.Post(R"(/.*)", forward);
  impl_->server.Put(R"(/.*)", forward);
  impl_->server.Delete(R"(/.*)", forward);
  impl_->server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  impl_->server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                     {"Access-Control-Allow-Headers", "Content-Type"},
                                     {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace sixbox

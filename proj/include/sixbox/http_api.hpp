#pragma once
// HTTP/JSON surface of the session service.
//
//   POST /sessions                {seed?, space?}          -> {session_id, belief, predictive}
//   POST /sessions/{id}/draw                               -> {color, belief, predictive, draw_index}
//   GET  /sessions/{id}                                    -> {belief, predictive, history, phase}
//   POST /sessions/{id}/lottery   {winning_color, choice}  -> {expected_values, recorded}
//   POST /sessions/{id}/end                                -> {summary}
//
// Errors: 400 malformed body, 404 unknown session, 409 closed session.

#include <memory>
#include <string>

#include "sixbox/json_io.hpp"
#include "sixbox/session_manager.hpp"

namespace sixbox {

struct ApiRequest {
  std::string method;
  std::string path;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  Json body;
};

// Transport-independent router; the HTTP server forwards every request here.
ApiResponse handle_request(SessionManager& sessions, const ApiRequest& request);

class HttpServer {
 public:
  explicit HttpServer(SessionManager& sessions);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws Error on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sixbox

#pragma once
// One JSON file per session under a directory. Files hold the session's
// identity, seed, space and event log; the belief is rebuilt by replay and the
// sealed box is re-derived from the seed, so neither is written out.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sixbox/json_io.hpp"
#include "sixbox/session.hpp"

namespace sixbox {

inline constexpr int kSessionSchemaVersion = 1;

Json session_to_record(const GameSession& session);
// Throws DomainError for unknown schema versions or malformed records.
GameSession session_from_record(const Json& record);

class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path path_for(const std::string& session_id) const;

  // Rewrites the whole file through a temporary and a rename.
  void save(const GameSession& session) const;
  std::optional<GameSession> load(const std::string& session_id) const;
  std::vector<std::string> list() const;

 private:
  std::filesystem::path dir_;
};

}  // namespace sixbox

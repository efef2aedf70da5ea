#include "sixbox/session_store.hpp"

#include <algorithm>
#include <fstream>

#include "sixbox/error.hpp"

namespace sixbox {

namespace fs = std::filesystem;

Json session_to_record(const GameSession& session) {
  Json events = Json::array();
  for (const auto& ev : session.events()) events.push_back(to_json(ev));
  return Json{{"schema_version", kSessionSchemaVersion},
              {"session_id", session.id()},
              {"seed", session.seed()},
              {"space", to_json(session.config())},
              {"created_at_ms", session.created_at().time_since_epoch().count()},
              {"phase", to_string(session.phase())},
              {"events", std::move(events)}};
}

GameSession session_from_record(const Json& record) {
  try {
    const int version = record.at("schema_version").get<int>();
    if (version != kSessionSchemaVersion) {
      throw DomainError("unsupported session schema version " + std::to_string(version));
    }
    std::vector<SessionEvent> events;
    for (const auto& e : record.at("events")) events.push_back(session_event_from_json(e));
    return GameSession::restore(record.at("session_id").get<std::string>(),
                                space_config_from_json(record.at("space")),
                                record.at("seed").get<std::uint64_t>(),
                                Timestamp(std::chrono::milliseconds(record.at("created_at_ms").get<std::int64_t>())),
                                std::move(events));
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed session record: ") + e.what());
  }
}

SessionStore::SessionStore(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

fs::path SessionStore::path_for(const std::string& session_id) const {
  if (session_id.empty() || session_id.find_first_of("/\\.") != std::string::npos) {
    throw DomainError("invalid session id '" + session_id + "'");
  }
  return dir_ / (session_id + ".json");
}

void SessionStore::save(const GameSession& session) const {
  const fs::path target = path_for(session.id());
  const fs::path tmp = fs::path(target).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << session_to_record(session).dump(2) << '\n';
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::optional<GameSession> SessionStore::load(const std::string& session_id) const {
  const fs::path file = path_for(session_id);
  std::ifstream in(file);
  if (!in) return std::nullopt;
  Json record;
  try {
    record = Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError("cannot parse " + file.string() + ": " + e.what());
  }
  return session_from_record(record);
}

std::vector<std::string> SessionStore::list() const {
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") ids.push_back(entry.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace sixbox

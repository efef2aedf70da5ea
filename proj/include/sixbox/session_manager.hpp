#pragma once
// Registry of live sessions. Mutations of one session are serialized behind
// its own lock and reads take a shared lock, so a reader always sees a
// consistent snapshot. Distinct sessions do not contend.

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>

#include "sixbox/session.hpp"
#include "sixbox/session_store.hpp"

namespace sixbox {

class SessionManager {
 public:
  // Without a store, sessions live in memory only.
  explicit SessionManager(std::optional<SessionStore> store = std::nullopt);

  struct Created {
    std::string session_id;
    BeliefVector belief;
    double predictive;
  };

  // A missing seed is taken from std::random_device. Throws ConfigError.
  Created create(std::optional<std::uint64_t> seed, const SpaceConfig& config);

  // The calls below throw NotFoundError for unknown ids and
  // SessionClosedError for mutations of ended sessions.
  DrawOutcome draw(const std::string& id);
  SessionSnapshot state(const std::string& id) const;
  LotteryOutcome lottery(const std::string& id, LotteryScenario scenario, LotteryOption choice);
  SessionSummary end(const std::string& id);

  // Test hooks; not reachable through the HTTP API.
  DrawOutcome force_draw(const std::string& id, DrawColor color);
  RevealedSummary end_with_reveal(const std::string& id);

  std::size_t size() const;

 private:
  struct Entry {
    explicit Entry(GameSession s) : session(std::move(s)) {}
    mutable std::shared_mutex mutex;
    GameSession session;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;

  // Applies `op` to a copy, persists the copy, then commits it.
  template <class Op>
  auto mutate(const std::string& id, Op&& op);

  std::optional<SessionStore> store_;
  mutable std::shared_mutex map_mutex_;
  mutable std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

}  // namespace sixbox

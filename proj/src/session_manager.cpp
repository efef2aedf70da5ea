#include "sixbox/session_manager.hpp"

#include <cstdio>
#include <mutex>
#include <random>

#include "sixbox/error.hpp"

namespace sixbox {

namespace {

std::string fresh_session_id() {
  static thread_local std::random_device device;
  const std::uint64_t hi = (static_cast<std::uint64_t>(device()) << 32) | device();
  const std::uint64_t lo = (static_cast<std::uint64_t>(device()) << 32) | device();
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

}  // namespace

SessionManager::SessionManager(std::optional<SessionStore> store) : store_(std::move(store)) {}

SessionManager::Created SessionManager::create(std::optional<std::uint64_t> seed, const SpaceConfig& config) {
  if (!seed) {
    std::random_device device;
    seed = (static_cast<std::uint64_t>(device()) << 32) | device();
  }
  GameSession session = GameSession::create(fresh_session_id(), config, *seed);
  if (store_) store_->save(session);
  Created out{session.id(), session.belief(), predictive(session.belief())};
  std::unique_lock lock(map_mutex_);
  sessions_.emplace(out.session_id, std::make_shared<Entry>(std::move(session)));
  return out;
}

std::shared_ptr<SessionManager::Entry> SessionManager::find(const std::string& id) const {
  {
    std::shared_lock lock(map_mutex_);
    if (auto it = sessions_.find(id); it != sessions_.end()) return it->second;
  }
  if (store_) {
    std::optional<GameSession> loaded;
    try {
      loaded = store_->load(id);
    } catch (const DomainError&) {
      loaded.reset();
    }
    if (loaded) {
      std::unique_lock lock(map_mutex_);
      auto [it, inserted] = sessions_.emplace(id, std::make_shared<Entry>(std::move(*loaded)));
      return it->second;
    }
  }
  throw NotFoundError("unknown session '" + id + "'");
}

template <class Op>
auto SessionManager::mutate(const std::string& id, Op&& op) {
  auto entry = find(id);
  std::unique_lock lock(entry->mutex);
  GameSession next = entry->session;
  auto result = op(next);
  if (store_) store_->save(next);
  entry->session = std::move(next);
  return result;
}

DrawOutcome SessionManager::draw(const std::string& id) {
  return mutate(id, [](GameSession& s) { return s.draw_ball(); });
}

DrawOutcome SessionManager::force_draw(const std::string& id, DrawColor color) {
  return mutate(id, [color](GameSession& s) { return s.record_draw(color); });
}

SessionSnapshot SessionManager::state(const std::string& id) const {
  auto entry = find(id);
  std::shared_lock lock(entry->mutex);
  return entry->session.current_state();
}

LotteryOutcome SessionManager::lottery(const std::string& id, LotteryScenario scenario, LotteryOption choice) {
  return mutate(id, [&](GameSession& s) { return s.lottery_round(scenario, choice); });
}

SessionSummary SessionManager::end(const std::string& id) {
  return mutate(id, [](GameSession& s) { return s.end_session(); });
}

RevealedSummary SessionManager::end_with_reveal(const std::string& id) {
  return mutate(id, [](GameSession& s) { return s.end_session_with_reveal(); });
}

std::size_t SessionManager::size() const {
  std::shared_lock lock(map_mutex_);
  return sessions_.size();
}

}  // namespace sixbox

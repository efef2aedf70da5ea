#pragma once
// Live six-box game.
//
// A session seals one box drawn at random from its hypothesis space, lets a
// player draw with replacement, records Ellsberg-style lottery choices, and
// ends without revealing the box. The event log is the source of truth; the
// belief is a cache equal to folding `update` over the logged draws.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sixbox/hypothesis.hpp"

namespace sixbox {

using Clock = std::chrono::system_clock;
using Timestamp = std::chrono::time_point<Clock, std::chrono::milliseconds>;

inline Timestamp now_ms() { return std::chrono::time_point_cast<std::chrono::milliseconds>(Clock::now()); }

struct SpaceConfig {
  int total_balls = HypothesisSpace::kDefaultTotalBalls;
  // Absent means every box 0..total_balls.
  std::optional<std::vector<int>> indices;

  // Throws ConfigError when the space is invalid or empty.
  HypothesisSpace build() const;
  friend bool operator==(const SpaceConfig&, const SpaceConfig&) = default;
};

// Which box the player bets on: the sealed box, or the box with known
// propensity 1/2.
enum class LotteryOption { MysteryBox, EqualBox };

std::string_view to_string(LotteryOption option) noexcept;
// Accepts "mystery", "mystery_box", "equal", "equal_box"; throws DomainError.
LotteryOption parse_lottery_option(std::string_view text);

struct LotteryScenario {
  DrawColor winning_color = DrawColor::White;
  static constexpr double kEqualBoxPropensity = 0.5;
  friend bool operator==(const LotteryScenario&, const LotteryScenario&) = default;
};

struct DrawEvent {
  DrawColor color;
  friend bool operator==(const DrawEvent&, const DrawEvent&) = default;
};
struct LotteryChoiceEvent {
  LotteryScenario scenario;
  LotteryOption choice;
  friend bool operator==(const LotteryChoiceEvent&, const LotteryChoiceEvent&) = default;
};
struct EndEvent {
  friend bool operator==(const EndEvent&, const EndEvent&) = default;
};

struct SessionEvent {
  std::int64_t index = 0;
  Timestamp timestamp{};
  using Kind = std::variant<DrawEvent, LotteryChoiceEvent, EndEvent>;
  Kind kind;

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

enum class Phase { Open, Ended };
std::string_view to_string(Phase phase) noexcept;

struct DrawOutcome {
  DrawColor color;
  BeliefVector belief_after;
  double predictive_after;
  std::int64_t draw_index;  // 0-based among draws
};

struct ExpectedValues {
  double mystery_box;
  double equal_box;
};

struct LotteryOutcome {
  SessionEvent recorded;
  ExpectedValues expected_values;
};

// Read-only view of a session. Carries no information about the sealed box.
struct SessionSnapshot {
  std::string session_id;
  BeliefVector belief;
  double predictive;
  std::vector<SessionEvent> history;
  Phase phase;
};

// Canonical end-of-game summary. Carries no information about the sealed box.
struct SessionSummary {
  std::string session_id;
  BeliefVector final_belief;
  double predictive;
  std::vector<DrawColor> draws;
  std::vector<LotteryChoiceEvent> lottery_record;
};

// Test/debug ending: the canonical summary plus the sealed box. Never part of
// the API surface.
struct RevealedSummary {
  SessionSummary summary;
  int hidden_box_index;
  static constexpr bool canonical = false;
};

class GameSession {
 public:
  // Seals a box chosen uniformly from the configured space using substream
  // kBoxStream of `seed`. Throws ConfigError for an invalid space.
  static GameSession create(std::string session_id, const SpaceConfig& config, std::uint64_t seed,
                            Timestamp created_at = now_ms());

  // Rebuilds a session from its identity and event log. Throws DomainError if
  // the log is malformed (non-contiguous indices, events after End).
  static GameSession restore(std::string session_id, const SpaceConfig& config, std::uint64_t seed,
                             Timestamp created_at, std::vector<SessionEvent> events);

  const std::string& id() const noexcept { return id_; }
  const SpaceConfig& config() const noexcept { return config_; }
  std::uint64_t seed() const noexcept { return seed_; }
  Timestamp created_at() const noexcept { return created_at_; }
  Phase phase() const noexcept { return phase_; }
  const BeliefVector& belief() const noexcept { return belief_; }
  const std::vector<SessionEvent>& events() const noexcept { return events_; }
  std::int64_t draw_count() const noexcept { return draw_count_; }

  // Draw k is Bernoulli(sealed propensity) from its own substream, so the
  // color depends only on (seed, k). Throws SessionClosedError once ended.
  DrawOutcome draw_ball(Timestamp at = now_ms());

  // Test hook: logs a draw of the given color instead of sampling one.
  DrawOutcome record_draw(DrawColor color, Timestamp at = now_ms());

  SessionSnapshot current_state() const;

  // Expected win probability of both options under the current belief. The
  // choice is recorded, not judged. Throws SessionClosedError once ended.
  LotteryOutcome lottery_round(LotteryScenario scenario, LotteryOption choice, Timestamp at = now_ms());

  // Throws SessionClosedError if already ended.
  SessionSummary end_session(Timestamp at = now_ms());
  RevealedSummary end_session_with_reveal(Timestamp at = now_ms());

  // Belief obtained by folding `update` over the logged draws from the
  // uniform prior.
  BeliefVector replay_belief() const;

 private:
  // Index of the sealed box. Only end_session_with_reveal reads it outward.
  class SealedBox {
   public:
    explicit SealedBox(BoxHypothesis box) : box_(box) {}
    double propensity() const noexcept { return box_.propensity(); }
    int unseal() const noexcept { return box_.index(); }

   private:
    BoxHypothesis box_;
  };

  GameSession(std::string id, SpaceConfig config, SpacePtr space, std::uint64_t seed, Timestamp created_at,
              SealedBox hidden);

  void require_open() const;
  SessionEvent& append(SessionEvent::Kind kind, Timestamp at);
  DrawOutcome apply_draw(DrawColor color, Timestamp at);
  SessionSummary summarize() const;

  std::string id_;
  SpaceConfig config_;
  SpacePtr space_;
  std::uint64_t seed_;
  Timestamp created_at_;
  SealedBox hidden_;
  std::vector<SessionEvent> events_;
  BeliefVector belief_;
  Phase phase_ = Phase::Open;
  std::int64_t draw_count_ = 0;
};

}  // namespace sixbox

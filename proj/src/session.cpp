#include "sixbox/session.hpp"

#include <algorithm>

#include "sixbox/error.hpp"
#include "sixbox/frequency.hpp"
#include "sixbox/rng.hpp"

namespace sixbox {

HypothesisSpace SpaceConfig::build() const {
  try {
    HypothesisSpace space =
        indices ? HypothesisSpace::restricted(total_balls, *indices) : HypothesisSpace::full(total_balls);
    if (space.empty()) throw ConfigError("hypothesis space is empty");
    return space;
  } catch (const InvalidSpaceError& e) {
    throw ConfigError(std::string("invalid space: ") + e.what());
  }
}

std::string_view to_string(LotteryOption option) noexcept {
  return option == LotteryOption::MysteryBox ? "mystery_box" : "equal_box";
}

LotteryOption parse_lottery_option(std::string_view text) {
  if (text == "mystery" || text == "mystery_box") return LotteryOption::MysteryBox;
  if (text == "equal" || text == "equal_box") return LotteryOption::EqualBox;
  throw DomainError("unknown lottery choice '" + std::string(text) + "'");
}

std::string_view to_string(Phase phase) noexcept { return phase == Phase::Open ? "open" : "ended"; }

GameSession::GameSession(std::string id, SpaceConfig config, SpacePtr space, std::uint64_t seed,
                         Timestamp created_at, SealedBox hidden)
    : id_(std::move(id)),
      config_(std::move(config)),
      space_(std::move(space)),
      seed_(seed),
      created_at_(created_at),
      hidden_(hidden),
      belief_(uniform_prior(space_)) {}

GameSession GameSession::create(std::string session_id, const SpaceConfig& config, std::uint64_t seed,
                                Timestamp created_at) {
  auto space = std::make_shared<const HypothesisSpace>(config.build());
  Rng box_rng(seed, kBoxStream);
  const BoxHypothesis hidden = (*space)[static_cast<std::size_t>(box_rng.below(space->size()))];
  return GameSession(std::move(session_id), config, std::move(space), seed, created_at, SealedBox(hidden));
}

GameSession GameSession::restore(std::string session_id, const SpaceConfig& config, std::uint64_t seed,
                                 Timestamp created_at, std::vector<SessionEvent> events) {
  GameSession session = create(std::move(session_id), config, seed, created_at);
  for (std::size_t k = 0; k < events.size(); ++k) {
    const SessionEvent& ev = events[k];
    if (ev.index != static_cast<std::int64_t>(k)) throw DomainError("event log indices are not contiguous");
    if (session.phase_ == Phase::Ended) throw DomainError("event log continues after the session ended");
    if (const auto* draw = std::get_if<DrawEvent>(&ev.kind)) {
      session.apply_draw(draw->color, ev.timestamp);
    } else if (const auto* lottery = std::get_if<LotteryChoiceEvent>(&ev.kind)) {
      session.append(*lottery, ev.timestamp);
    } else {
      session.append(EndEvent{}, ev.timestamp);
      session.phase_ = Phase::Ended;
    }
  }
  return session;
}

void GameSession::require_open() const {
  if (phase_ == Phase::Ended) throw SessionClosedError("session " + id_ + " has ended");
}

SessionEvent& GameSession::append(SessionEvent::Kind kind, Timestamp at) {
  events_.push_back(SessionEvent{static_cast<std::int64_t>(events_.size()), at, std::move(kind)});
  return events_.back();
}

DrawOutcome GameSession::apply_draw(DrawColor color, Timestamp at) {
  BeliefVector next = update(belief_, color);
  belief_ = std::move(next);
  append(DrawEvent{color}, at);
  const std::int64_t draw_index = draw_count_++;
  return DrawOutcome{color, belief_, predictive(belief_), draw_index};
}

DrawOutcome GameSession::draw_ball(Timestamp at) {
  require_open();
  Rng rng(derive_seed(seed_, kDrawStream), static_cast<std::uint64_t>(draw_count_));
  const DrawColor color = rng.bernoulli(hidden_.propensity()) ? DrawColor::White : DrawColor::Black;
  return apply_draw(color, at);
}

DrawOutcome GameSession::record_draw(DrawColor color, Timestamp at) {
  require_open();
  return apply_draw(color, at);
}

SessionSnapshot GameSession::current_state() const {
  return SessionSnapshot{id_, belief_, predictive(belief_), events_, phase_};
}

LotteryOutcome GameSession::lottery_round(LotteryScenario scenario, LotteryOption choice, Timestamp at) {
  require_open();
  const ExpectedValues ev{predictive(belief_, scenario.winning_color), LotteryScenario::kEqualBoxPropensity};
  const SessionEvent& recorded = append(LotteryChoiceEvent{scenario, choice}, at);
  return LotteryOutcome{recorded, ev};
}

SessionSummary GameSession::summarize() const {
  SessionSummary out{id_, belief_, predictive(belief_), {}, {}};
  for (const auto& ev : events_) {
    if (const auto* draw = std::get_if<DrawEvent>(&ev.kind)) out.draws.push_back(draw->color);
    if (const auto* lottery = std::get_if<LotteryChoiceEvent>(&ev.kind)) out.lottery_record.push_back(*lottery);
  }
  return out;
}

SessionSummary GameSession::end_session(Timestamp at) {
  require_open();
  append(EndEvent{}, at);
  phase_ = Phase::Ended;
  return summarize();
}

RevealedSummary GameSession::end_session_with_reveal(Timestamp at) {
  SessionSummary summary = end_session(at);
  return RevealedSummary{std::move(summary), hidden_.unseal()};
}

BeliefVector GameSession::replay_belief() const {
  BeliefVector belief = uniform_prior(space_);
  for (const auto& ev : events_) {
    if (const auto* draw = std::get_if<DrawEvent>(&ev.kind)) belief = update(belief, draw->color);
  }
  return belief;
}

}  // namespace sixbox

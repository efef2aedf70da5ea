#pragma once
// Discrete Bayesian updating over a finite set of urn compositions.
//
// A box holds `total_balls` balls of which `white_count` are white; drawing
// with replacement from it is a Bernoulli trial with propensity
// white_count / total_balls. A BeliefVector is a probability mass over the
// boxes of a HypothesisSpace and is updated by likelihood times prior.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sixbox {

enum class DrawColor : std::uint8_t { White, Black };

// "W" / "B".
std::string_view to_string(DrawColor color) noexcept;
// Accepts "W", "B", "White", "Black" (case-insensitive); throws DomainError.
DrawColor parse_color(std::string_view text);

class BoxHypothesis {
 public:
  // Box with `white_count` white balls out of `total_balls`. The hypothesis
  // index equals its white count.
  BoxHypothesis(int white_count, int total_balls);

  int index() const noexcept { return white_count_; }
  int white_count() const noexcept { return white_count_; }
  int total_balls() const noexcept { return total_balls_; }

  // white_count / total_balls. Exact whenever the ratio is representable.
  double propensity() const noexcept {
    return static_cast<double>(white_count_) / static_cast<double>(total_balls_);
  }

  friend bool operator==(const BoxHypothesis&, const BoxHypothesis&) = default;

 private:
  int white_count_;
  int total_balls_;
};

class HypothesisSpace {
 public:
  static constexpr int kDefaultTotalBalls = 5;

  // All boxes B_0..B_N.
  static HypothesisSpace full(int total_balls = kDefaultTotalBalls);

  // Only the listed box indices, kept in increasing order. Indices must be
  // distinct and within 0..total_balls. An empty list is allowed here and
  // rejected by uniform_prior.
  static HypothesisSpace restricted(int total_balls, std::vector<int> indices);

  int total_balls() const noexcept { return total_balls_; }
  std::size_t size() const noexcept { return hypotheses_.size(); }
  bool empty() const noexcept { return hypotheses_.empty(); }
  std::span<const BoxHypothesis> hypotheses() const noexcept { return hypotheses_; }
  const BoxHypothesis& operator[](std::size_t pos) const { return hypotheses_.at(pos); }

  // Position of box `index` in this space, if present.
  std::optional<std::size_t> position_of(int index) const noexcept;
  bool is_full() const noexcept {
    return hypotheses_.size() == static_cast<std::size_t>(total_balls_) + 1;
  }

  friend bool operator==(const HypothesisSpace&, const HypothesisSpace&) = default;

 private:
  HypothesisSpace(int total_balls, std::vector<BoxHypothesis> hypotheses)
      : total_balls_(total_balls), hypotheses_(std::move(hypotheses)) {}

  int total_balls_;
  std::vector<BoxHypothesis> hypotheses_;
};

using SpacePtr = std::shared_ptr<const HypothesisSpace>;

// Probability mass over the hypotheses of a space, aligned by position.
// Immutable; every instance is nonnegative and sums to one within 1e-12.
class BeliefVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  // Validates `mass`: length, nonnegativity, unit sum. Throws DomainError.
  BeliefVector(SpacePtr space, std::vector<double> mass);

  // Normalizes nonnegative `weights`. Throws ImpossibleObservationError if
  // they sum to zero.
  static BeliefVector from_weights(SpacePtr space, std::vector<double> weights);

  const HypothesisSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  std::span<const double> mass() const noexcept { return mass_; }
  double operator[](std::size_t pos) const { return mass_.at(pos); }
  std::size_t size() const noexcept { return mass_.size(); }

  // Mass of box `index`; zero for boxes outside the space.
  double mass_of(int index) const noexcept;

 private:
  struct Trusted {};
  BeliefVector(Trusted, SpacePtr space, std::vector<double> mass)
      : space_(std::move(space)), mass_(std::move(mass)) {}

  SpacePtr space_;
  std::vector<double> mass_;
};

struct SequenceSummary {
  std::int64_t n = 0;  // draws
  std::int64_t x = 0;  // whites among them

  // Throws DomainError unless 0 <= x <= n.
  static SequenceSummary make(std::int64_t n, std::int64_t x);
  static SequenceSummary of(std::span<const DrawColor> draws);

  friend bool operator==(const SequenceSummary&, const SequenceSummary&) = default;
};

BeliefVector uniform_prior(const SpacePtr& space);
inline BeliefVector uniform_prior(const HypothesisSpace& space) {
  return uniform_prior(std::make_shared<const HypothesisSpace>(space));
}

// P(color | box).
double likelihood(DrawColor color, const BoxHypothesis& hypothesis) noexcept;

// Posterior after one draw. Boxes with zero likelihood get exactly zero.
BeliefVector update(const BeliefVector& belief, DrawColor color);

// Posterior after x whites in n draws, in any order. Switches to log space
// above kLogSpaceThreshold draws.
inline constexpr std::int64_t kLogSpaceThreshold = 50;
BeliefVector update_sequence(const BeliefVector& prior, SequenceSummary summary);

// Probability that the next draw is white: sum of propensity times mass.
double predictive(const BeliefVector& belief) noexcept;

// Probability that the next draw has `color`.
double predictive(const BeliefVector& belief, DrawColor color) noexcept;

// P(color | h_i) / P(color | h_j). Throws UndefinedFactorError when the
// denominator is zero.
double bayes_factor(DrawColor color, const BoxHypothesis& h_i, const BoxHypothesis& h_j);

}  // namespace sixbox

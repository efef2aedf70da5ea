#include "sixbox/hypothesis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "sixbox/error.hpp"

namespace sixbox {

std::string_view to_string(DrawColor color) noexcept {
  return color == DrawColor::White ? "W" : "B";
}

DrawColor parse_color(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "w" || lower == "white") return DrawColor::White;
  if (lower == "b" || lower == "black") return DrawColor::Black;
  throw DomainError("unknown color '" + std::string(text) + "'");
}

BoxHypothesis::BoxHypothesis(int white_count, int total_balls)
    : white_count_(white_count), total_balls_(total_balls) {
  if (total_balls <= 0) throw InvalidSpaceError("total_balls must be positive");
  if (white_count < 0 || white_count > total_balls) {
    throw InvalidSpaceError("white_count " + std::to_string(white_count) +
                            " outside 0.." + std::to_string(total_balls));
  }
}

HypothesisSpace HypothesisSpace::full(int total_balls) {
  if (total_balls <= 0) throw InvalidSpaceError("total_balls must be positive");
  std::vector<int> all(static_cast<std::size_t>(total_balls) + 1);
  std::iota(all.begin(), all.end(), 0);
  return restricted(total_balls, std::move(all));
}

HypothesisSpace HypothesisSpace::restricted(int total_balls, std::vector<int> indices) {
  if (total_balls <= 0) throw InvalidSpaceError("total_balls must be positive");
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw InvalidSpaceError("duplicate box index");
  }
  std::vector<BoxHypothesis> hyps;
  hyps.reserve(indices.size());
  for (int i : indices) hyps.emplace_back(i, total_balls);
  return HypothesisSpace(total_balls, std::move(hyps));
}

std::optional<std::size_t> HypothesisSpace::position_of(int index) const noexcept {
  for (std::size_t k = 0; k < hypotheses_.size(); ++k) {
    if (hypotheses_[k].index() == index) return k;
  }
  return std::nullopt;
}

BeliefVector::BeliefVector(SpacePtr space, std::vector<double> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
  if (!space_) throw InvalidSpaceError("belief without a hypothesis space");
  if (mass_.size() != space_->size()) {
    throw DomainError("belief length " + std::to_string(mass_.size()) +
                      " does not match space size " + std::to_string(space_->size()));
  }
  double total = 0.0;
  for (double m : mass_) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("belief mass must be finite and >= 0");
    total += m;
  }
  if (std::abs(total - 1.0) > kNormTolerance) throw DomainError("belief mass does not sum to 1");
}

BeliefVector BeliefVector::from_weights(SpacePtr space, std::vector<double> weights) {
  if (!space) throw InvalidSpaceError("belief without a hypothesis space");
  if (weights.size() != space->size()) throw DomainError("weight count does not match space size");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("weights must be finite and >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw ImpossibleObservationError("observation has zero probability under the belief");
  for (double& w : weights) w /= total;
  return BeliefVector(Trusted{}, std::move(space), std::move(weights));
}

double BeliefVector::mass_of(int index) const noexcept {
  const auto pos = space_->position_of(index);
  return pos ? mass_[*pos] : 0.0;
}

SequenceSummary SequenceSummary::make(std::int64_t n, std::int64_t x) {
  if (n < 0 || x < 0 || x > n) {
    throw DomainError("sequence summary requires 0 <= x <= n (n=" + std::to_string(n) +
                      ", x=" + std::to_string(x) + ")");
  }
  return SequenceSummary{n, x};
}

SequenceSummary SequenceSummary::of(std::span<const DrawColor> draws) {
  const auto whites = std::count(draws.begin(), draws.end(), DrawColor::White);
  return SequenceSummary{static_cast<std::int64_t>(draws.size()), static_cast<std::int64_t>(whites)};
}

BeliefVector uniform_prior(const SpacePtr& space) {
  if (!space || space->empty()) throw InvalidSpaceError("uniform prior over an empty space");
  return BeliefVector::from_weights(space, std::vector<double>(space->size(), 1.0));
}

double likelihood(DrawColor color, const BoxHypothesis& hypothesis) noexcept {
  // Complement via counts keeps 1 - pi exact (e.g. 4/5 rather than 1 - 0.2).
  const int hits = color == DrawColor::White ? hypothesis.white_count()
                                             : hypothesis.total_balls() - hypothesis.white_count();
  return static_cast<double>(hits) / static_cast<double>(hypothesis.total_balls());
}

BeliefVector update(const BeliefVector& belief, DrawColor color) {
  const auto hyps = belief.space().hypotheses();
  std::vector<double> weights(hyps.size());
  for (std::size_t k = 0; k < hyps.size(); ++k) {
    weights[k] = likelihood(color, hyps[k]) * belief[k];
  }
  return BeliefVector::from_weights(belief.space_ptr(), std::move(weights));
}

namespace {

// pi^x (1 - pi)^(n - x) with 0^0 = 1, in linear space.
double sequence_likelihood(const BoxHypothesis& h, std::int64_t n, std::int64_t x) {
  const double white = likelihood(DrawColor::White, h);
  const double black = likelihood(DrawColor::Black, h);
  return std::pow(white, static_cast<double>(x)) * std::pow(black, static_cast<double>(n - x));
}

double log_sequence_likelihood(const BoxHypothesis& h, std::int64_t n, std::int64_t x) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const double white = likelihood(DrawColor::White, h);
  const double black = likelihood(DrawColor::Black, h);
  double out = 0.0;
  if (x > 0) out += white > 0.0 ? static_cast<double>(x) * std::log(white) : kNegInf;
  if (n - x > 0) out += black > 0.0 ? static_cast<double>(n - x) * std::log(black) : kNegInf;
  return out;
}

}  // namespace

BeliefVector update_sequence(const BeliefVector& prior, SequenceSummary summary) {
  summary = SequenceSummary::make(summary.n, summary.x);
  const auto hyps = prior.space().hypotheses();
  std::vector<double> weights(hyps.size());

  if (summary.n <= kLogSpaceThreshold) {
    for (std::size_t k = 0; k < hyps.size(); ++k) {
      weights[k] = prior[k] * sequence_likelihood(hyps[k], summary.n, summary.x);
    }
    return BeliefVector::from_weights(prior.space_ptr(), std::move(weights));
  }

  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  double peak = kNegInf;
  for (std::size_t k = 0; k < hyps.size(); ++k) {
    const double lp = prior[k] > 0.0 ? std::log(prior[k]) : kNegInf;
    weights[k] = lp + log_sequence_likelihood(hyps[k], summary.n, summary.x);
    peak = std::max(peak, weights[k]);
  }
  if (peak == kNegInf) throw ImpossibleObservationError("sequence has zero probability under the belief");
  for (double& w : weights) w = std::exp(w - peak);
  return BeliefVector::from_weights(prior.space_ptr(), std::move(weights));
}

double predictive(const BeliefVector& belief) noexcept {
  return predictive(belief, DrawColor::White);
}

double predictive(const BeliefVector& belief, DrawColor color) noexcept {
  const auto hyps = belief.space().hypotheses();
  double p = 0.0;
  for (std::size_t k = 0; k < hyps.size(); ++k) p += likelihood(color, hyps[k]) * belief[k];
  return p;
}

double bayes_factor(DrawColor color, const BoxHypothesis& h_i, const BoxHypothesis& h_j) {
  const double denom = likelihood(color, h_j);
  if (denom == 0.0) {
    throw UndefinedFactorError("Bayes factor undefined: box " + std::to_string(h_j.index()) +
                               " cannot produce " + std::string(to_string(color)));
  }
  return likelihood(color, h_i) / denom;
}

}  // namespace sixbox

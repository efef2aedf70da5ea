#pragma once
// Probabilities of probabilities: uncertain degrees of belief, mixtures of
// conditional probabilities, odds, decibans, and Monte Carlo propagation.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sixbox/hypothesis.hpp"

namespace sixbox {

// Triangular distribution over a probability value. lo == mode == hi is a
// certain belief.
class TriangularBelief {
 public:
  // Throws DomainError unless 0 <= lo <= mode <= hi <= 1.
  TriangularBelief(double lo, double mode, double hi);
  static TriangularBelief certain(double p) { return TriangularBelief(p, p, p); }

  double lo() const noexcept { return lo_; }
  double mode() const noexcept { return mode_; }
  double hi() const noexcept { return hi_; }
  bool degenerate() const noexcept { return lo_ == hi_; }

  double variance() const noexcept;
  // Inverse CDF on [0, 1].
  double quantile(double u) const noexcept;

  // Warning text when the density has a sharp edge, i.e. the mode sits on an
  // endpoint of a nondegenerate support. Not an error.
  std::optional<std::string> lint() const;

  friend bool operator==(const TriangularBelief&, const TriangularBelief&) = default;

 private:
  double lo_, mode_, hi_;
};

double triangular_mean(const TriangularBelief& t) noexcept;

// `count` inverse-CDF samples; deterministic in `seed`. Throws DomainError
// for count < 1.
std::vector<double> triangular_sample(const TriangularBelief& t, std::uint64_t seed, std::int64_t count);

// Weights over hypotheses H_i together with P(A | H_i).
class DiscreteMixture {
 public:
  // Throws DomainError on length mismatch, weights not summing to 1 within
  // 1e-12, or conditionals outside [0, 1].
  DiscreteMixture(std::vector<double> weights, std::vector<double> conditionals);
  DiscreteMixture(const BeliefVector& belief, std::vector<double> conditionals);

  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> conditionals() const noexcept { return conditionals_; }

 private:
  std::vector<double> weights_;
  std::vector<double> conditionals_;
};

// Sum of P(A | H_i) P(H_i).
double marginalize(const DiscreteMixture& mix) noexcept;

// Odds in favor; +infinity stands for certainty.
class OddsValue {
 public:
  // Throws DomainError for negative or NaN odds.
  explicit OddsValue(double odds);
  double value() const noexcept { return odds_; }
  bool certain() const noexcept;

 private:
  double odds_;
};

// p / (1 - p); p == 1 maps to +infinity. Throws DomainError outside [0, 1].
OddsValue probability_to_odds(double p);
// o / (1 + o); +infinity maps to 1.
double odds_to_probability(OddsValue o) noexcept;

// 10 log10(odds). Zero and infinite odds give -inf / +inf, reported by
// finite() == false.
struct IntensityDeciban {
  double value = 0.0;
  bool finite() const noexcept;
};

IntensityDeciban to_decibans(OddsValue o) noexcept;
OddsValue from_decibans(IntensityDeciban db);

// Posterior odds = bf * prior odds. Throws DomainError for a negative bf or
// the undefined product 0 * inf.
OddsValue odds_update(OddsValue prior, double bayes_factor);
// Same update on the log scale: adds 10 log10(bf).
IntensityDeciban deciban_update(IntensityDeciban prior, double bayes_factor);

// Pure function of sampled probabilities with a declared codomain. `arity` of
// zero accepts any nonempty input.
struct Combiner {
  std::string name;
  std::size_t arity = 0;
  double codomain_lo = 0.0;
  double codomain_hi = 1.0;
  std::function<double(std::span<const double>)> fn;
};

// identity, product, odds, bayes-posterior.
const std::vector<Combiner>& combiner_registry();
// Throws DomainError for unknown names.
const Combiner& find_combiner(const std::string& name);

struct PropagationSummary {
  std::string combiner;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  double mean = 0.0;
  double sd = 0.0;
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
};

inline constexpr std::int64_t kMinPropagationSamples = 100;

// Pushes independent draws from each belief through `combiner`. Belief k is
// sampled from substream k of `seed`. Throws DomainError for too few samples
// or an arity mismatch, PropagationError when the combiner leaves its
// codomain or returns a non-finite value.
PropagationSummary propagate(std::span<const TriangularBelief> beliefs, const Combiner& combiner,
                             std::int64_t samples, std::uint64_t seed);

}  // namespace sixbox

#pragma once
// Bernoulli/binomial simulation and the Bayes-versus-frequency comparison.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sixbox/hypothesis.hpp"

namespace sixbox {

// Substream identifiers shared by everything that samples a hidden box and
// then draws from it.
inline constexpr std::uint64_t kBoxStream = 1;
inline constexpr std::uint64_t kDrawStream = 2;

struct DrawSequence {
  std::vector<DrawColor> outcomes;
  std::uint64_t seed = 0;
  double propensity_used = 0.0;

  SequenceSummary summary() const { return SequenceSummary::of(outcomes); }
  friend bool operator==(const DrawSequence&, const DrawSequence&) = default;
};

// n i.i.d. Bernoulli(propensity) draws; bit-identical for equal arguments.
// Throws DomainError for propensity outside [0, 1] or negative n.
DrawSequence simulate_draws(double propensity, std::int64_t n, std::uint64_t seed);

// C(n,x) p^x (1-p)^(n-x), computed in log space. Throws DomainError unless
// 0 <= x <= n and 0 <= p <= 1.
double binomial_pmf(std::int64_t n, double p, std::int64_t x);

enum class DeviationMethod { Exact, Gaussian };

// "exact" / "gaussian"; throws DomainError otherwise.
DeviationMethod parse_deviation_method(const std::string& text);

// P(|X/n - p| > epsilon) for X ~ Binomial(n, p). Exact sums the binomial
// tails; Gaussian uses the two-sided normal tail erfc(z / sqrt 2) with
// z = epsilon sqrt(n) / sqrt(p (1-p)), no continuity correction.
double frequency_deviation_probability(std::int64_t n, double p, double epsilon,
                                       DeviationMethod method);

// Total-variation distance between the relative-frequency histogram of
// n_trials simulated Binomial(n, p) counts and the binomial pmf.
double histogram_vs_pmf(std::int64_t n_trials, std::int64_t n, double p, std::uint64_t seed);

struct TrialRecord {
  std::int64_t x = 0;
  double bayes_predictive = 0.0;
  double frequency = 0.0;
  double squared_error_bayes = 0.0;
  double squared_error_frequency = 0.0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct ComparisonReport {
  std::int64_t trials = 0;
  int true_box_index = 0;
  std::int64_t draws_per_trial = 0;
  double true_propensity = 0.0;
  double mean_abs_error_bayes = 0.0;
  double mean_abs_error_frequency = 0.0;
  double mean_squared_error_bayes = 0.0;
  double mean_squared_error_frequency = 0.0;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  std::vector<TrialRecord> per_trial_records;

  friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

// Each trial draws n balls from `true_box` (trial t uses substream t of
// `seed`), then scores the Bayesian predictive over `space` under a uniform
// prior and the raw frequency x/n against the true propensity.
ComparisonReport compare_estimators(const BoxHypothesis& true_box, const HypothesisSpace& space,
                                    std::int64_t n, std::int64_t trials, std::uint64_t seed);

struct SixDrawResult {
  std::vector<DrawColor> draws;
  std::int64_t whites = 0;
  BeliefVector posterior;
  double predictive = 0.0;
};

inline constexpr std::uint64_t kSixDrawDefaultSeed = 2023;

// Six-box game ending without reveal: a box is picked uniformly from B_0..B_5,
// six balls are drawn with replacement, and only the posterior and the next
// draw's predictive are kept. `forced_whites` overrides the drawn count.
SixDrawResult run_six_draw_game(std::optional<std::uint64_t> seed_override,
                                std::optional<std::int64_t> forced_whites);

}  // namespace sixbox

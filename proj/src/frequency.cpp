#include "sixbox/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <boost/math/distributions/binomial.hpp>

#include "sixbox/error.hpp"
#include "sixbox/rng.hpp"

namespace sixbox {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + " outside [0, 1]");
}

std::int64_t count_whites(Rng& rng, double p, std::int64_t n) {
  std::int64_t whites = 0;
  for (std::int64_t k = 0; k < n; ++k) whites += rng.bernoulli(p) ? 1 : 0;
  return whites;
}

}  // namespace

DrawSequence simulate_draws(double propensity, std::int64_t n, std::uint64_t seed) {
  require_probability(propensity, "propensity");
  if (n < 0) throw DomainError("draw count must be >= 0");
  Rng rng(seed, kDrawStream);
  DrawSequence seq;
  seq.seed = seed;
  seq.propensity_used = propensity;
  seq.outcomes.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    seq.outcomes.push_back(rng.bernoulli(propensity) ? DrawColor::White : DrawColor::Black);
  }
  return seq;
}

double binomial_pmf(std::int64_t n, double p, std::int64_t x) {
  if (n < 0 || x < 0 || x > n) throw DomainError("binomial pmf requires 0 <= x <= n");
  require_probability(p, "p");
  if (p == 0.0) return x == 0 ? 1.0 : 0.0;
  if (p == 1.0) return x == n ? 1.0 : 0.0;
  return boost::math::pdf(boost::math::binomial_distribution<double>(static_cast<double>(n), p),
                         static_cast<double>(x));
}

DeviationMethod parse_deviation_method(const std::string& text) {
  if (text == "exact") return DeviationMethod::Exact;
  if (text == "gaussian") return DeviationMethod::Gaussian;
  throw DomainError("unknown deviation method '" + text + "'");
}

double frequency_deviation_probability(std::int64_t n, double p, double epsilon,
                                       DeviationMethod method) {
  if (n < 1) throw DomainError("deviation probability requires n >= 1");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  require_probability(p, "p");
  const double nd = static_cast<double>(n);

  if (method == DeviationMethod::Gaussian) {
    const double sd = std::sqrt(p * (1.0 - p));
    if (sd == 0.0) return 0.0;
    const double z = epsilon * std::sqrt(nd) / sd;
    return std::erfc(z / std::sqrt(2.0));
  }

  // |x - np| > n eps, with a relative guard so that a deviation equal to the
  // threshold up to rounding is not counted.
  const double threshold = nd * epsilon;
  const double guard = 1e-9 * std::max(1.0, threshold);
  const double center = nd * p;
  double tail = 0.0;
  for (std::int64_t x = 0; x <= n; ++x) {
    if (std::abs(static_cast<double>(x) - center) > threshold + guard) tail += binomial_pmf(n, p, x);
  }
  return std::min(tail, 1.0);
}

double histogram_vs_pmf(std::int64_t n_trials, std::int64_t n, double p, std::uint64_t seed) {
  if (n_trials < 1) throw DomainError("histogram requires at least one trial");
  if (n < 0) throw DomainError("draw count must be >= 0");
  require_probability(p, "p");
  Rng rng(seed, kDrawStream);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t t = 0; t < n_trials; ++t) ++counts[static_cast<std::size_t>(count_whites(rng, p, n))];
  double tv = 0.0;
  for (std::int64_t x = 0; x <= n; ++x) {
    const double freq = static_cast<double>(counts[static_cast<std::size_t>(x)]) / static_cast<double>(n_trials);
    tv += std::abs(freq - binomial_pmf(n, p, x));
  }
  return 0.5 * tv;
}

ComparisonReport compare_estimators(const BoxHypothesis& true_box, const HypothesisSpace& space,
                                    std::int64_t n, std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("comparison requires at least one trial");
  if (n < 1) throw DomainError("comparison requires at least one draw per trial");
  if (true_box.total_balls() != space.total_balls()) {
    throw InvalidSpaceError("true box and hypothesis space disagree on ball count");
  }

  const auto space_ptr = std::make_shared<const HypothesisSpace>(space);
  const BeliefVector prior = uniform_prior(space_ptr);
  const double truth = true_box.propensity();

  ComparisonReport report;
  report.trials = trials;
  report.true_box_index = true_box.index();
  report.draws_per_trial = n;
  report.true_propensity = truth;
  report.seed = seed;
  report.rng_algorithm = std::string(kRngAlgorithm);
  report.per_trial_records.resize(static_cast<std::size_t>(trials));

  auto run_trial = [&](std::int64_t t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    const std::int64_t x = count_whites(rng, truth, n);
    TrialRecord rec;
    rec.x = x;
    rec.bayes_predictive = predictive(update_sequence(prior, SequenceSummary{n, x}));
    rec.frequency = static_cast<double>(x) / static_cast<double>(n);
    rec.squared_error_bayes = (rec.bayes_predictive - truth) * (rec.bayes_predictive - truth);
    rec.squared_error_frequency = (rec.frequency - truth) * (rec.frequency - truth);
    report.per_trial_records[static_cast<std::size_t>(t)] = rec;
  };

  // Trials are independent substreams; workers fill disjoint slots and the
  // reduction below runs in trial order, so results do not depend on the
  // worker count.
  const std::int64_t workers = std::clamp<std::int64_t>(
      static_cast<std::int64_t>(std::thread::hardware_concurrency()), 1, std::min<std::int64_t>(trials, 8));
  {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
    for (std::int64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::int64_t t = w; t < trials; t += workers) run_trial(t);
        } catch (...) {
          failures[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  double abs_b = 0.0, abs_f = 0.0, sq_b = 0.0, sq_f = 0.0;
  for (const auto& rec : report.per_trial_records) {
    abs_b += std::abs(rec.bayes_predictive - truth);
    abs_f += std::abs(rec.frequency - truth);
    sq_b += rec.squared_error_bayes;
    sq_f += rec.squared_error_frequency;
  }
  const double count = static_cast<double>(trials);
  report.mean_abs_error_bayes = abs_b / count;
  report.mean_abs_error_frequency = abs_f / count;
  report.mean_squared_error_bayes = sq_b / count;
  report.mean_squared_error_frequency = sq_f / count;
  return report;
}

SixDrawResult run_six_draw_game(std::optional<std::uint64_t> seed_override,
                                std::optional<std::int64_t> forced_whites) {
  constexpr std::int64_t kDraws = 6;
  const std::uint64_t seed = seed_override.value_or(kSixDrawDefaultSeed);
  const auto space = std::make_shared<const HypothesisSpace>(HypothesisSpace::full());

  Rng box_rng(seed, kBoxStream);
  const auto& hidden = (*space)[static_cast<std::size_t>(box_rng.below(space->size()))];
  DrawSequence seq = simulate_draws(hidden.propensity(), kDraws, seed);

  std::int64_t whites = seq.summary().x;
  if (forced_whites) {
    if (*forced_whites < 0 || *forced_whites > kDraws) throw DomainError("forced white count outside 0..6");
    whites = *forced_whites;
  }
  BeliefVector posterior = update_sequence(uniform_prior(space), SequenceSummary{kDraws, whites});
  const double pred = predictive(posterior);
  return SixDrawResult{std::move(seq.outcomes), whites, std::move(posterior), pred};
}

}  // namespace sixbox

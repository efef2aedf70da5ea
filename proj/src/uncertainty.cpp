#include "sixbox/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sixbox/error.hpp"
#include "sixbox/rng.hpp"

namespace sixbox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Linear interpolation between order statistics (R type 7).
double sorted_quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto below = static_cast<std::size_t>(std::floor(pos));
  const std::size_t above = std::min(below + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(below);
  return sorted[below] + frac * (sorted[above] - sorted[below]);
}

// Neumaier summation: the rounding error of each addition goes to `carry`.
void add_compensated(double& sum, double& carry, double v) {
  const double t = sum + v;
  carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
  sum = t;
}

}  // namespace

TriangularBelief::TriangularBelief(double lo, double mode, double hi) : lo_(lo), mode_(mode), hi_(hi) {
  if (!(0.0 <= lo && lo <= mode && mode <= hi && hi <= 1.0)) {
    throw DomainError("triangular belief requires 0 <= lo <= mode <= hi <= 1");
  }
}

double TriangularBelief::variance() const noexcept {
  return (lo_ * lo_ + mode_ * mode_ + hi_ * hi_ - lo_ * mode_ - lo_ * hi_ - mode_ * hi_) / 18.0;
}

double TriangularBelief::quantile(double u) const noexcept {
  if (degenerate()) return lo_;
  const double width = hi_ - lo_;
  const double split = (mode_ - lo_) / width;
  if (u < split) return lo_ + std::sqrt(u * width * (mode_ - lo_));
  return hi_ - std::sqrt((1.0 - u) * width * (hi_ - mode_));
}

std::optional<std::string> TriangularBelief::lint() const {
  if (degenerate()) return std::nullopt;
  if (mode_ == lo_ || mode_ == hi_) {
    return "triangular belief has its mode on an endpoint; sharp edges are rarely a reasonable belief";
  }
  return std::nullopt;
}

double triangular_mean(const TriangularBelief& t) noexcept { return (t.lo() + t.mode() + t.hi()) / 3.0; }

std::vector<double> triangular_sample(const TriangularBelief& t, std::uint64_t seed, std::int64_t count) {
  if (count < 1) throw DomainError("sample count must be >= 1");
  Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (double& v : out) v = t.quantile(rng.uniform());
  return out;
}

DiscreteMixture::DiscreteMixture(std::vector<double> weights, std::vector<double> conditionals)
    : weights_(std::move(weights)), conditionals_(std::move(conditionals)) {
  if (weights_.empty() || weights_.size() != conditionals_.size()) {
    throw DomainError("mixture needs one conditional per weight");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw DomainError("mixture weights must be >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > BeliefVector::kNormTolerance) throw DomainError("mixture weights must sum to 1");
  for (double c : conditionals_) {
    if (!(c >= 0.0 && c <= 1.0)) throw DomainError("conditional probability outside [0, 1]");
  }
}

DiscreteMixture::DiscreteMixture(const BeliefVector& belief, std::vector<double> conditionals)
    : DiscreteMixture(std::vector<double>(belief.mass().begin(), belief.mass().end()),
                      std::move(conditionals)) {}

double marginalize(const DiscreteMixture& mix) noexcept {
  const auto w = mix.weights();
  const auto c = mix.conditionals();
  // Equal weights stand for 1/k exactly; averaging avoids the rounding of 1/k.
  if (std::all_of(w.begin(), w.end(), [&](double v) { return v == w.front(); })) {
    double sum = 0.0;
    double carry = 0.0;
    for (double v : c) add_compensated(sum, carry, v);
    return (sum + carry) / static_cast<double>(c.size());
  }
  // Dot product in twice the working precision (error-free products).
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double prod = w[i] * c[i];
    carry += std::fma(w[i], c[i], -prod);
    add_compensated(sum, carry, prod);
  }
  return sum + carry;
}

OddsValue::OddsValue(double odds) : odds_(odds) {
  if (!(odds >= 0.0)) throw DomainError("odds must be >= 0");
}

bool OddsValue::certain() const noexcept { return std::isinf(odds_); }

OddsValue probability_to_odds(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0, 1]");
  if (p == 1.0) return OddsValue(kInf);
  return OddsValue(p / (1.0 - p));
}

double odds_to_probability(OddsValue o) noexcept {
  if (o.certain()) return 1.0;
  return o.value() / (1.0 + o.value());
}

bool IntensityDeciban::finite() const noexcept { return std::isfinite(value); }

IntensityDeciban to_decibans(OddsValue o) noexcept {
  if (o.value() == 0.0) return {-kInf};
  if (o.certain()) return {kInf};
  return {10.0 * std::log10(o.value())};
}

OddsValue from_decibans(IntensityDeciban db) {
  if (std::isnan(db.value)) throw DomainError("deciban value is NaN");
  return OddsValue(std::pow(10.0, db.value / 10.0));
}

OddsValue odds_update(OddsValue prior, double bayes_factor) {
  if (!(bayes_factor >= 0.0)) throw DomainError("Bayes factor must be >= 0");
  if ((prior.value() == 0.0 && std::isinf(bayes_factor)) || (prior.certain() && bayes_factor == 0.0)) {
    throw DomainError("odds update 0 * infinity is undefined");
  }
  return OddsValue(prior.value() * bayes_factor);
}

IntensityDeciban deciban_update(IntensityDeciban prior, double bayes_factor) {
  if (!(bayes_factor >= 0.0)) throw DomainError("Bayes factor must be >= 0");
  const IntensityDeciban step = to_decibans(OddsValue(bayes_factor));
  const double sum = prior.value + step.value;
  if (std::isnan(sum)) throw DomainError("deciban update -inf + inf is undefined");
  return {sum};
}

const std::vector<Combiner>& combiner_registry() {
  static const std::vector<Combiner> registry = {
      {"identity", 1, 0.0, 1.0, [](std::span<const double> p) { return p[0]; }},
      {"product", 0, 0.0, 1.0,
       [](std::span<const double> p) { return std::accumulate(p.begin(), p.end(), 1.0, std::multiplies<>()); }},
      {"odds", 1, 0.0, kInf, [](std::span<const double> p) { return p[0] / (1.0 - p[0]); }},
      // Inputs: P(H), P(E|H), P(E|not H). Output: P(H|E).
      {"bayes-posterior", 3, 0.0, 1.0,
       [](std::span<const double> p) {
         const double with = p[0] * p[1];
         return with / (with + (1.0 - p[0]) * p[2]);
       }},
  };
  return registry;
}

const Combiner& find_combiner(const std::string& name) {
  for (const auto& c : combiner_registry()) {
    if (c.name == name) return c;
  }
  throw DomainError("unknown combiner '" + name + "'");
}

PropagationSummary propagate(std::span<const TriangularBelief> beliefs, const Combiner& combiner,
                             std::int64_t samples, std::uint64_t seed) {
  if (samples < kMinPropagationSamples) throw DomainError("propagation needs at least 100 samples");
  if (beliefs.empty()) throw DomainError("propagation needs at least one belief");
  if (combiner.arity != 0 && combiner.arity != beliefs.size()) {
    throw DomainError("combiner '" + combiner.name + "' takes " + std::to_string(combiner.arity) +
                      " beliefs, got " + std::to_string(beliefs.size()));
  }

  std::vector<std::vector<double>> draws;
  draws.reserve(beliefs.size());
  for (std::size_t k = 0; k < beliefs.size(); ++k) {
    draws.push_back(triangular_sample(beliefs[k], derive_seed(seed, k), samples));
  }

  std::vector<double> out(static_cast<std::size_t>(samples));
  std::vector<double> args(beliefs.size());
  for (std::size_t s = 0; s < out.size(); ++s) {
    for (std::size_t k = 0; k < beliefs.size(); ++k) args[k] = draws[k][s];
    const double v = combiner.fn(args);
    if (!std::isfinite(v) || v < combiner.codomain_lo || v > combiner.codomain_hi) {
      throw PropagationError("combiner '" + combiner.name + "' returned " + std::to_string(v) +
                             " outside its codomain");
    }
    out[s] = v;
  }

  PropagationSummary summary;
  summary.combiner = combiner.name;
  summary.samples = samples;
  summary.seed = seed;
  summary.rng_algorithm = std::string(kRngAlgorithm);
  const double count = static_cast<double>(samples);
  // Shifted by the first sample so a constant output has exactly zero spread.
  const double shift = out.front();
  double sum = 0.0;
  for (double v : out) sum += v - shift;
  const double offset = sum / count;
  double ss = 0.0;
  for (double v : out) ss += (v - shift - offset) * (v - shift - offset);
  summary.mean = shift + offset;
  summary.sd = std::sqrt(ss / (count - 1.0));
  std::sort(out.begin(), out.end());
  summary.q05 = sorted_quantile(out, 0.05);
  summary.q50 = sorted_quantile(out, 0.50);
  summary.q95 = sorted_quantile(out, 0.95);
  return summary;
}

}  // namespace sixbox

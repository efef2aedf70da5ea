#pragma once
// Continuous posterior over a Bernoulli propensity under a uniform prior.
//
// After x successes in n trials the density is
//   f(p | n, x) = (n+1)! / (x! (n-x)!) * p^x (1-p)^(n-x),
// a Beta(x+1, n-x+1) law whose mean is Laplace's rule of succession.

#include <cstdint>
#include <utility>

#include "sixbox/hypothesis.hpp"

namespace sixbox {

class BetaPosterior {
 public:
  // Throws DomainError unless 0 <= x <= n.
  BetaPosterior(std::int64_t n, std::int64_t x);
  explicit BetaPosterior(SequenceSummary summary) : BetaPosterior(summary.n, summary.x) {}

  std::int64_t n() const noexcept { return n_; }
  std::int64_t x() const noexcept { return x_; }
  double alpha() const noexcept { return static_cast<double>(x_) + 1.0; }
  double beta() const noexcept { return static_cast<double>(n_ - x_) + 1.0; }

  // log((n+1)! / (x! (n-x)!)).
  double log_normalizer() const noexcept;

 private:
  std::int64_t n_;
  std::int64_t x_;
};

// Normalized density at p. Throws DomainError for p outside [0, 1].
double posterior_density(const BetaPosterior& post, double p);

// (x+1)/(n+2).
double rule_of_succession(SequenceSummary summary);

// Integral of the density over [0, 1] by adaptive quadrature.
double density_integral(const BetaPosterior& post);

// Integral of p f(p) over [0, 1] by adaptive quadrature. Throws NumericError
// if the quadrature error estimate exceeds kQuadratureTolerance.
inline constexpr double kQuadratureTolerance = 1e-10;
double predictive_from_density(const BetaPosterior& post);

// P(propensity <= p).
double posterior_cdf(const BetaPosterior& post, double p);

// Central interval holding `mass` of the posterior, with (1 - mass)/2 in each
// tail. Endpoints are found by bisection on the CDF to 1e-12. Throws
// DomainError unless 0 < mass < 1.
std::pair<double, double> credible_interval(const BetaPosterior& post, double mass);

}  // namespace sixbox

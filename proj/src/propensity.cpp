#include "sixbox/propensity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "sixbox/error.hpp"

namespace sixbox {

namespace {

constexpr std::int64_t kExactFactorialLimit = 20;

// (n+1) * C(n, x), exact in 64-bit integers for n <= 20.
double exact_normalizer(std::int64_t n, std::int64_t x) {
  std::uint64_t c = 1;
  const std::int64_t k = std::min(x, n - x);
  for (std::int64_t i = 1; i <= k; ++i) {
    c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return static_cast<double>(c) * static_cast<double>(n + 1);
}

// Breakpoints around the bulk so the adaptive rule sees the peak at large n.
std::vector<double> breakpoints(const BetaPosterior& post) {
  const double a = post.alpha();
  const double b = post.beta();
  const double mean = a / (a + b);
  const double sd = std::sqrt(a * b / ((a + b) * (a + b) * (a + b + 1.0)));
  std::vector<double> pts{0.0, 1.0};
  for (double k : {-40.0, -30.0, -20.0, -15.0, -10.0, -8.0, -6.0, -5.0, -4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0,
                   3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 15.0, 20.0, 30.0, 40.0}) {
    const double t = mean + k * sd;
    if (t > 0.0 && t < 1.0) pts.push_back(t);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double integrate(const BetaPosterior& post, const std::function<double(double)>& g) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  const auto pts = breakpoints(post);
  double total = 0.0;
  double err_total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    // Each piece is mapped onto [-1, 1]: Boost compares its per-leaf error
    // estimate without the interval's scale, which breaks narrow pieces.
    const double mid = 0.5 * (pts[k] + pts[k + 1]);
    const double half = 0.5 * (pts[k + 1] - pts[k]);
    double err = 0.0;
    total += Rule::integrate([&](double t) { return half * g(mid + half * t); }, -1.0, 1.0, 15,
                             kQuadratureTolerance, &err);
    err_total += err;
  }
  if (!std::isfinite(total) || err_total > kQuadratureTolerance) {
    throw NumericError("quadrature did not converge (error estimate " + std::to_string(err_total) + ")");
  }
  return total;
}

}  // namespace

BetaPosterior::BetaPosterior(std::int64_t n, std::int64_t x) : n_(n), x_(x) {
  if (n < 0 || x < 0 || x > n) throw DomainError("Beta posterior requires 0 <= x <= n");
}

double BetaPosterior::log_normalizer() const noexcept {
  if (n_ <= kExactFactorialLimit) return std::log(exact_normalizer(n_, x_));
  return std::lgamma(static_cast<double>(n_) + 2.0) - std::lgamma(static_cast<double>(x_) + 1.0) -
         std::lgamma(static_cast<double>(n_ - x_) + 1.0);
}

double posterior_density(const BetaPosterior& post, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("propensity outside [0, 1]");
  const std::int64_t n = post.n();
  const std::int64_t x = post.x();
  if ((x > 0 && p == 0.0) || (n - x > 0 && p == 1.0)) return 0.0;
  if (n <= kExactFactorialLimit) {
    return exact_normalizer(n, x) * std::pow(p, static_cast<double>(x)) *
           std::pow(1.0 - p, static_cast<double>(n - x));
  }
  return boost::math::ibeta_derivative(post.alpha(), post.beta(), p);
}

double rule_of_succession(SequenceSummary summary) {
  summary = SequenceSummary::make(summary.n, summary.x);
  return (static_cast<double>(summary.x) + 1.0) / (static_cast<double>(summary.n) + 2.0);
}

double density_integral(const BetaPosterior& post) {
  return integrate(post, [&](double p) { return posterior_density(post, p); });
}

double predictive_from_density(const BetaPosterior& post) {
  return integrate(post, [&](double p) { return p * posterior_density(post, p); });
}

double posterior_cdf(const BetaPosterior& post, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("propensity outside [0, 1]");
  return boost::math::ibeta(post.alpha(), post.beta(), p);
}

namespace {

double invert_cdf(const BetaPosterior& post, double target) {
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (posterior_cdf(post, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> credible_interval(const BetaPosterior& post, double mass) {
  if (!(mass > 0.0 && mass < 1.0)) throw DomainError("credible mass must lie in (0, 1)");
  const double tail = 0.5 * (1.0 - mass);
  return {invert_cdf(post, tail), invert_cdf(post, 1.0 - tail)};
}

}  // namespace sixbox

#include "sixbox/uncertainty.hpp"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sixbox/error.hpp"

using namespace sixbox;

TEST(Marginalize, Examples) {
  const DiscreteMixture restricted(std::vector<double>(5, 0.2), {0.2, 0.4, 0.6, 0.8, 1.0});
  EXPECT_NEAR(marginalize(restricted), 0.6, 1e-15);
  EXPECT_EQ(marginalize(DiscreteMixture({1.0}, {0.37})), 0.37);
  EXPECT_NEAR(marginalize(DiscreteMixture({0.3, 0.7}, {0.0, 1.0})), 0.7, 1e-15);
}

TEST(Marginalize, AgreesWithPredictive) {
  const auto space = std::make_shared<const HypothesisSpace>(HypothesisSpace::full());
  auto belief = uniform_prior(space);
  const std::vector<double> conditionals{0, 0.2, 0.4, 0.6, 0.8, 1.0};
  for (DrawColor c : {DrawColor::White, DrawColor::Black, DrawColor::Black, DrawColor::White, DrawColor::White}) {
    EXPECT_NEAR(marginalize(DiscreteMixture(belief, conditionals)), predictive(belief), 1e-12);
    belief = update(belief, c);
  }
}

TEST(Marginalize, Validation) {
  EXPECT_THROW(DiscreteMixture({0.5, 0.4}, {0.1, 0.2}), DomainError);
  EXPECT_THROW(DiscreteMixture({0.5, 0.5}, {0.1}), DomainError);
  EXPECT_THROW(DiscreteMixture({0.5, 0.5}, {0.1, 1.2}), DomainError);
  EXPECT_THROW(DiscreteMixture({}, {}), DomainError);
}

TEST(Triangular, MeanExamples) {
  EXPECT_NEAR(triangular_mean(TriangularBelief(0.7, 0.8, 0.9)), 0.8, 1e-15);
  EXPECT_EQ(triangular_mean(TriangularBelief::certain(0.5)), 0.5);
  EXPECT_NEAR(triangular_mean(TriangularBelief(0, 0, 1)), 1.0 / 3.0, 1e-15);
}

TEST(Triangular, Validation) {
  EXPECT_THROW(TriangularBelief(0.5, 0.4, 0.9), DomainError);
  EXPECT_THROW(TriangularBelief(-0.1, 0.4, 0.9), DomainError);
  EXPECT_THROW(TriangularBelief(0.1, 0.4, 1.2), DomainError);
}

TEST(Triangular, Lint) {
  EXPECT_FALSE(TriangularBelief(0.7, 0.8, 0.9).lint());
  EXPECT_FALSE(TriangularBelief::certain(0.3).lint());
  EXPECT_TRUE(TriangularBelief(0, 0, 1).lint());
  EXPECT_TRUE(TriangularBelief(0.2, 0.6, 0.6).lint());
}

TEST(Triangular, QuantileInvertsCdf) {
  const TriangularBelief t(0.1, 0.3, 0.9);
  auto pdf = [&](double p) {
    if (p < t.lo() || p > t.hi()) return 0.0;
    return p <= t.mode() ? 2 * (p - t.lo()) / ((t.hi() - t.lo()) * (t.mode() - t.lo()))
                         : 2 * (t.hi() - p) / ((t.hi() - t.lo()) * (t.hi() - t.mode()));
  };
  for (double u : {0.01, 0.2, 0.33, 0.5, 0.9}) {
    const double q = t.quantile(u);
    // Piecewise Simpson, split at the kink.
    const double mass = q <= t.mode() ? oracle::simpson(pdf, t.lo(), q, 2000)
                                      : oracle::simpson(pdf, t.lo(), t.mode(), 2000) + oracle::simpson(pdf, t.mode(), q, 2000);
    EXPECT_NEAR(mass, u, 1e-10);
  }
}

TEST(TriangularSample, Degenerate) {
  for (double v : triangular_sample(TriangularBelief::certain(0.42), 1, 1000)) EXPECT_EQ(v, 0.42);
  EXPECT_THROW(triangular_sample(TriangularBelief::certain(0.42), 1, 0), DomainError);
}

TEST(TriangularSample, MeanAndVariance) {
  const auto s = triangular_sample(TriangularBelief(0.7, 0.8, 0.9), 8, 100000);
  const double mean = std::accumulate(s.begin(), s.end(), 0.0) / s.size();
  EXPECT_NEAR(mean, 0.8, 0.002);

  const auto w = triangular_sample(TriangularBelief(0, 0.5, 1), 9, 100000);
  const double m = std::accumulate(w.begin(), w.end(), 0.0) / w.size();
  double var = 0.0;
  for (double v : w) var += (v - m) * (v - m);
  var /= (w.size() - 1);
  EXPECT_NEAR(var, 1.0 / 24.0, 0.1 / 24.0);
  EXPECT_NEAR(TriangularBelief(0, 0.5, 1).variance(), 1.0 / 24.0, 1e-15);
  EXPECT_EQ(triangular_sample(TriangularBelief(0, 0.5, 1), 9, 50),
            triangular_sample(TriangularBelief(0, 0.5, 1), 9, 50));
}

TEST(Odds, Examples) {
  EXPECT_NEAR(odds_to_probability(OddsValue(11000)), 0.99990910, 1e-8);
  EXPECT_EQ(probability_to_odds(0.5).value(), 1.0);
  EXPECT_EQ(odds_to_probability(OddsValue(0)), 0.0);
  EXPECT_TRUE(probability_to_odds(1.0).certain());
  EXPECT_EQ(odds_to_probability(probability_to_odds(1.0)), 1.0);
  EXPECT_THROW(OddsValue(-1), DomainError);
  EXPECT_THROW(probability_to_odds(-0.1), DomainError);
}

TEST(Odds, RoundTrip) {
  for (int k = 0; k <= 10000; ++k) {
    const double p = (1.0 - 1e-9) * k / 10000.0;
    EXPECT_NEAR(odds_to_probability(probability_to_odds(p)), p, 1e-12);
  }
  for (double o : {1e-12, 1e-3, 0.5, 3.0, 1e6, 1e12}) {
    const double p = odds_to_probability(OddsValue(o));
    EXPECT_NEAR(p, o / (1 + o), 1e-12);
  }
}

TEST(Decibans, Examples) {
  EXPECT_EQ(to_decibans(OddsValue(1)).value, 0.0);
  EXPECT_NEAR(to_decibans(OddsValue(100)).value, 20.0, 1e-12);
  EXPECT_NEAR(to_decibans(OddsValue(11000)).value, 40.413926851582254, 1e-9);
  EXPECT_FALSE(to_decibans(OddsValue(0)).finite());
  EXPECT_LT(to_decibans(OddsValue(0)).value, 0.0);
  EXPECT_FALSE(to_decibans(probability_to_odds(1.0)).finite());
  EXPECT_NEAR(from_decibans({20.0}).value(), 100.0, 1e-10);
}

TEST(Decibans, AdditiveAndMonotone) {
  double prev = -1e300;
  for (double o1 = 0.001; o1 < 1e4; o1 *= 3.7) {
    const double d = to_decibans(OddsValue(o1)).value;
    EXPECT_GT(d, prev);
    prev = d;
    for (double o2 : {0.01, 0.7, 1.25, 40.0}) {
      EXPECT_NEAR(to_decibans(OddsValue(o1 * o2)).value,
                  to_decibans(OddsValue(o1)).value + to_decibans(OddsValue(o2)).value, 1e-9);
    }
  }
}

TEST(OddsUpdate, Examples) {
  EXPECT_EQ(odds_update(OddsValue(1), 1.25).value(), 1.25);
  EXPECT_EQ(odds_update(OddsValue(2), 0.5).value(), 1.0);
  OddsValue odds(1);
  IntensityDeciban db{0.0};
  for (int k = 0; k < 20; ++k) {
    odds = odds_update(odds, 1.25);
    db = deciban_update(db, 1.25);
  }
  EXPECT_NEAR(odds.value(), std::pow(1.25, 20), 1e-9);
  EXPECT_NEAR(from_decibans(db).value() / odds.value(), 1.0, 1e-12);
  EXPECT_THROW(odds_update(OddsValue(1), -1), DomainError);
  EXPECT_THROW(odds_update(OddsValue(0), INFINITY), DomainError);
}

TEST(OddsUpdate, MatchesBoxPosteriorRatio) {
  const auto space = std::make_shared<const HypothesisSpace>(HypothesisSpace::full());
  auto belief = uniform_prior(space);
  OddsValue odds(1);
  for (int k = 0; k < 20; ++k) {
    belief = update(belief, DrawColor::White);
    odds = odds_update(odds, bayes_factor(DrawColor::White, (*space)[5], (*space)[4]));
    EXPECT_NEAR(odds.value() / (belief[5] / belief[4]), 1.0, 1e-12);
  }
  EXPECT_NEAR(odds.value(), 86.73617379884035, 1e-9);
}

TEST(Propagate, DegenerateIdentityAndProduct) {
  const std::vector<TriangularBelief> one{TriangularBelief::certain(0.3)};
  const auto id = propagate(one, find_combiner("identity"), 1000, 1);
  EXPECT_EQ(id.mean, 0.3);
  EXPECT_EQ(id.sd, 0.0);
  EXPECT_EQ(id.q05, 0.3);
  EXPECT_EQ(id.q95, 0.3);

  const std::vector<TriangularBelief> two{TriangularBelief::certain(0.3), TriangularBelief::certain(0.6)};
  const auto prod = propagate(two, find_combiner("product"), 1000, 1);
  EXPECT_EQ(prod.mean, 0.3 * 0.6);
  EXPECT_EQ(prod.sd, 0.0);
}

TEST(Propagate, OddsCombinerMatchesQuadrature) {
  const std::vector<TriangularBelief> b{TriangularBelief(0.7, 0.8, 0.9)};
  const auto s = propagate(b, find_combiner("odds"), 100000, 21);
  // Integral of p/(1-p) against the triangular density, split at the mode.
  auto pdf = [](double p) { return p <= 0.8 ? (p - 0.7) / 0.01 : (0.9 - p) / 0.01; };
  auto g = [&](double p) { return p / (1 - p) * pdf(p); };
  const double analytic = oracle::simpson(g, 0.7, 0.8, 20000) + oracle::simpson(g, 0.8, 0.9, 20000);
  EXPECT_NEAR(analytic, 4.232481437645475, 1e-9);
  EXPECT_NEAR(s.mean / analytic, 1.0, 0.02);
  EXPECT_LT(s.q05, s.q50);
  EXPECT_LT(s.q50, s.q95);
}

TEST(Propagate, LinearCombinerWithinThreeStandardErrors) {
  const std::vector<TriangularBelief> b{TriangularBelief(0.1, 0.2, 0.6), TriangularBelief(0.3, 0.35, 0.4)};
  const Combiner mean_of{"mean", 2, 0.0, 1.0, [](std::span<const double> p) { return 0.5 * (p[0] + p[1]); }};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = propagate(b, mean_of, 20000, seed);
    const double expected = 0.5 * (triangular_mean(b[0]) + triangular_mean(b[1]));
    EXPECT_LT(std::abs(s.mean - expected), 3.0 * s.sd / std::sqrt(20000.0));
  }
}

TEST(Propagate, BayesPosteriorCombiner) {
  const std::vector<TriangularBelief> b{TriangularBelief::certain(0.5), TriangularBelief::certain(0.8),
                                        TriangularBelief::certain(0.2)};
  const auto s = propagate(b, find_combiner("bayes-posterior"), 100, 3);
  EXPECT_NEAR(s.mean, 0.8, 1e-15);
}

TEST(Propagate, Errors) {
  const std::vector<TriangularBelief> one{TriangularBelief(0.7, 0.8, 0.9)};
  EXPECT_THROW(propagate(one, find_combiner("identity"), 99, 1), DomainError);
  EXPECT_THROW(propagate(one, find_combiner("bayes-posterior"), 1000, 1), DomainError);
  EXPECT_THROW(find_combiner("sum"), DomainError);
  const Combiner bad{"double", 1, 0.0, 1.0, [](std::span<const double> p) { return 2 * p[0]; }};
  EXPECT_THROW(propagate(one, bad, 1000, 1), PropagationError);
  const std::vector<TriangularBelief> certain{TriangularBelief::certain(1.0)};
  EXPECT_THROW(propagate(certain, find_combiner("odds"), 1000, 1), PropagationError);
}

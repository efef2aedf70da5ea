// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and never tuned at run time.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sixbox/error.hpp"
#include "sixbox/frequency.hpp"
#include "sixbox/http_api.hpp"
#include "sixbox/hypothesis.hpp"
#include "sixbox/propensity.hpp"
#include "sixbox/session.hpp"
#include "sixbox/session_store.hpp"
#include "sixbox/uncertainty.hpp"

using namespace sixbox;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
  void near(double actual, double expected, double tol, const std::string& what) {
    const bool good = std::abs(actual - expected) <= tol;
    if (!good && ok) detail << what << ": got " << actual << ", want " << expected << " +/- " << tol;
    ok = ok && good;
  }
  void relative(double actual, double expected, double rel, const std::string& what) {
    const bool good = expected == 0.0 ? actual == 0.0 : std::abs(actual / expected - 1.0) <= rel;
    if (!good && ok) detail << what << ": got " << actual << ", want " << expected << " (rel " << rel << ")";
    ok = ok && good;
  }
};

SpacePtr six_boxes() { return std::make_shared<const HypothesisSpace>(HypothesisSpace::full()); }

Check golden_twenty_whites() {
  Check c;
  const auto post = update_sequence(uniform_prior(six_boxes()), SequenceSummary{20, 20});
  const double want[] = {0, 1.036587e-14, 1.086940e-8, 3.614356e-5, 1.139740e-2, 9.885665e-1};
  for (int i = 0; i < 6; ++i) c.relative(post[i], want[i], 1e-6, "B_" + std::to_string(i));
  return c;
}

Check golden_five_in_twenty() {
  Check c;
  const auto post = update_sequence(uniform_prior(six_boxes()), SequenceSummary{20, 5});
  const double want[] = {0, 0.6968411, 0.2979907, 5.167614e-3, 6.645594e-7, 0};
  for (int i = 0; i < 6; ++i) c.relative(post[i], want[i], 1e-6, "B_" + std::to_string(i));
  return c;
}

Check golden_predictive_chain() {
  Check c;
  const auto prior = uniform_prior(six_boxes());
  const auto one = update(prior, DrawColor::White);
  for (int i = 0; i < 6; ++i) c.near(one[i], i / 15.0, 1e-6, "one-white B_" + std::to_string(i));
  c.near(predictive(one), 0.7333333, 1e-6, "predictive after one White");
  BeliefVector four = prior;
  for (int k = 0; k < 4; ++k) four = update(four, DrawColor::White);
  c.near(predictive(four), 0.9039837, 1e-6, "predictive after four Whites");
  return c;
}

Check six_draw_scenario() {
  Check c;
  const auto out = run_six_draw_game(std::nullopt, 2);
  const double want[] = {0, 0.34594595, 0.43783784, 0.19459459, 0.02162162, 0};
  for (int i = 0; i < 6; ++i) c.near(out.posterior[i], want[i], 1e-7, "B_" + std::to_string(i));
  c.near(out.predictive, 0.3783784, 1e-7, "predictive");
  return c;
}

Check conjugacy() {
  Check c;
  const auto space = six_boxes();
  for (int n = 0; n <= 100 && c.ok; ++n) {
    for (int x = 0; x <= n && c.ok; ++x) {
      const BetaPosterior post(n, x);
      const std::string tag = "n=" + std::to_string(n) + " x=" + std::to_string(x);
      c.near(predictive_from_density(post), (x + 1.0) / (n + 2.0), 1e-9, "predictive " + tag);
      const auto discrete = update_sequence(uniform_prior(space), SequenceSummary{n, x});
      double total = 0.0;
      double grid[6];
      for (int i = 0; i <= 5; ++i) total += grid[i] = posterior_density(post, i / 5.0);
      for (int i = 0; i <= 5; ++i) c.near(discrete[i], grid[i] / total, 1e-9, "grid " + tag);
    }
  }
  return c;
}

Check exchangeability() {
  Check c;
  std::mt19937_64 gen(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 1000 && c.ok; ++rep) {
    const int total = 1 + static_cast<int>(gen() % 8);
    const auto space = std::make_shared<const HypothesisSpace>(HypothesisSpace::full(total));
    std::vector<double> w(space->size());
    for (double& x : w) x = u(gen) < 0.15 ? 0.0 : u(gen) + 1e-3;
    w[gen() % w.size()] += 1.0;
    const auto prior = BeliefVector::from_weights(space, w);

    std::vector<DrawColor> draws(gen() % 41);
    const double p_white = u(gen);
    for (auto& d : draws) d = u(gen) < p_white ? DrawColor::White : DrawColor::Black;

    BeliefVector batch = prior;
    try {
      batch = update_sequence(prior, SequenceSummary::of(draws));
    } catch (const ImpossibleObservationError&) {
      continue;
    }
    for (int perm = 0; perm < 3; ++perm) {
      std::shuffle(draws.begin(), draws.end(), gen);
      BeliefVector folded = prior;
      for (DrawColor d : draws) folded = update(folded, d);
      for (std::size_t k = 0; k < folded.size(); ++k) {
        c.near(folded[k], batch[k], 1e-12, "case " + std::to_string(rep) + " entry " + std::to_string(k));
      }
    }
  }
  return c;
}

Check gaussian_tail() {
  Check c;
  const double g = frequency_deviation_probability(100000, 0.5, 1.0 / std::sqrt(1e5), DeviationMethod::Gaussian);
  c.near(g, 0.0455, 0.0005, "gaussian at n=1e5");
  const double e = frequency_deviation_probability(10000, 0.5, 1.0 / std::sqrt(1e4), DeviationMethod::Exact);
  c.expect(e >= 0.04 && e <= 0.05, "exact at n=1e4 = " + std::to_string(e) + " outside [0.04, 0.05]");
  return c;
}

Check bayes_vs_frequency() {
  Check c;
  const auto space = HypothesisSpace::full();
  const auto report = compare_estimators(space[1], space, 100, 1000, 6021023);
  c.expect(report.mean_abs_error_bayes <= report.mean_abs_error_frequency,
           "bayes MAE " + std::to_string(report.mean_abs_error_bayes) + " > frequency MAE " +
               std::to_string(report.mean_abs_error_frequency));
  return c;
}

Check restricted_marginalization() {
  Check c;
  const auto space = std::make_shared<const HypothesisSpace>(HypothesisSpace::restricted(5, {1, 2, 3, 4, 5}));
  const auto prior = uniform_prior(space);
  std::vector<double> conditionals;
  for (const auto& h : space->hypotheses()) conditionals.push_back(h.propensity());
  const double m = marginalize(DiscreteMixture(prior, conditionals));
  // 3/5 is not exact in binary; "exactly" means the nearest double.
  c.expect(m == 0.6, "marginal = " + std::to_string(m));
  return c;
}

Check odds_pipeline() {
  Check c;
  c.near(odds_to_probability(OddsValue(11000)), 0.9999091, 1e-7, "11000:1");
  IntensityDeciban db{0.0};
  for (int k = 0; k < 20; ++k) db = deciban_update(db, 1.25);
  const auto post = update_sequence(uniform_prior(six_boxes()), SequenceSummary{20, 20});
  c.relative(from_decibans(db).value(), post[5] / post[4], 1e-6, "B_5:B_4 odds after 20 Whites");
  return c;
}

void collect_keys(const Json& j, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      out.push_back(k);
      collect_keys(v, out);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) collect_keys(v, out);
  }
}

bool has_box_field(const Json& j) {
  std::vector<std::string> keys;
  collect_keys(j, keys);
  return std::any_of(keys.begin(), keys.end(), [](const std::string& k) {
    return k.find("hidden") != std::string::npos || k.find("true_box") != std::string::npos ||
           k.find("reveal") != std::string::npos;
  });
}

Check sealing_and_replay() {
  Check c;
  SessionManager sessions;
  const auto created = handle_request(sessions, {"POST", "/sessions", R"({"seed": 99})"});
  const std::string id = created.body["session_id"];
  std::vector<Json> fixtures{created.body};
  fixtures.push_back(handle_request(sessions, {"POST", "/sessions/" + id + "/draw", ""}).body);
  fixtures.push_back(handle_request(sessions, {"POST", "/sessions/" + id + "/lottery",
                                               R"({"winning_color": "W", "choice": "mystery"})"}).body);
  fixtures.push_back(handle_request(sessions, {"GET", "/sessions/" + id, ""}).body);
  fixtures.push_back(handle_request(sessions, {"POST", "/sessions/" + id + "/end", ""}).body);
  for (const auto& f : fixtures) c.expect(!has_box_field(f), "API fixture exposes the sealed box: " + f.dump());

  std::mt19937_64 gen(4242);
  for (int rep = 0; rep < 100 && c.ok; ++rep) {
    auto s = GameSession::create("r" + std::to_string(rep), SpaceConfig{}, gen());
    const int steps = 1 + static_cast<int>(gen() % 60);
    for (int k = 0; k < steps; ++k) {
      if (gen() % 6 == 0) {
        s.lottery_round(LotteryScenario{DrawColor::White}, LotteryOption::MysteryBox);
      } else {
        s.draw_ball();
      }
    }
    const auto replay = s.replay_belief();
    for (std::size_t k = 0; k < replay.size(); ++k) c.near(replay[k], s.belief()[k], 1e-12, "replay");
    const auto summary = s.end_session();
    c.expect(!has_box_field(to_json(summary)), "summary exposes the sealed box");
    c.expect(!has_box_field(session_to_record(s)), "persisted record exposes the sealed box");
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {"1  golden posterior, 20 Whites (rel 1e-6)", golden_twenty_whites},
      {"2  golden posterior, n=20 x=5 (rel 1e-6)", golden_five_in_twenty},
      {"3  golden predictive chain (1e-6)", golden_predictive_chain},
      {"4  six-draw scenario n=6 x=2 (1e-7)", six_draw_scenario},
      {"5  conjugacy n<=100 (1e-9)", conjugacy},
      {"6  exchangeability, 1000 cases (1e-12)", exchangeability},
      {"7  gaussian tail 0.0455+/-0.0005, exact in [0.04,0.05]", gaussian_tail},
      {"8  Bayes MAE <= frequency MAE, B_1 n=100 x1000", bayes_vs_frequency},
      {"9  restricted-space marginal = 0.6", restricted_marginalization},
      {"10 odds pipeline (1e-7, rel 1e-6)", odds_pipeline},
      {"11 sealing + replay on 100 sessions (1e-12)", sealing_and_replay},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << "exception: " << e.what();
    }
    std::printf("[%s] %s%s%s\n", c.ok ? "PASS" : "FAIL", cr.name, c.ok ? "" : " -- ", c.detail.str().c_str());
    failures += c.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

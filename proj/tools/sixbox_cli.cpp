// sixbox: command-line front end for the six-box inference engine.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sixbox/error.hpp"
#include "sixbox/frequency.hpp"
#include "sixbox/http_api.hpp"
#include "sixbox/hypothesis.hpp"
#include "sixbox/propensity.hpp"
#include "sixbox/session_manager.hpp"
#include "sixbox/uncertainty.hpp"

using namespace sixbox;

namespace {

std::string format_belief(const BeliefVector& b) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(8);
  for (std::size_t k = 0; k < b.size(); ++k) {
    out << (k ? " " : "") << "B" << b.space()[k].index() << "=" << b[k];
  }
  return out.str();
}

// ---- reproduce ------------------------------------------------------------

struct Golden {
  std::string label;
  double computed;
  double reference;
  double tolerance;
  bool relative;
};

int run_reproduce() {
  const auto space = std::make_shared<const HypothesisSpace>(HypothesisSpace::full());
  const auto prior = uniform_prior(space);
  std::vector<Golden> rows;
  auto add_vector = [&](const std::string& tag, const BeliefVector& b, const std::vector<double>& ref, double tol,
                        bool rel) {
    for (std::size_t i = 0; i < ref.size(); ++i) {
      rows.push_back({tag + " B" + std::to_string(i), b[i], ref[i], tol, rel});
    }
  };

  for (std::size_t i = 0; i < 6; ++i) rows.push_back({"prior B" + std::to_string(i), prior[i], 1.0 / 6.0, 1e-12, false});
  rows.push_back({"predictive, no draws", predictive(prior), 0.5, 1e-12, false});
  const auto one = update(prior, DrawColor::White);
  add_vector("after 1 White", one, {0.0, 0.06666667, 0.13333333, 0.20000000, 0.26666667, 0.33333333}, 5e-9, false);
  rows.push_back({"predictive after 1 White", predictive(one), 0.7333333, 5e-8, false});
  const auto four = update_sequence(prior, {4, 4});
  add_vector("after 4 Whites", four, {0.0, 0.00102145, 0.01634321, 0.08273749, 0.26149132, 0.63840654}, 5e-9, false);
  rows.push_back({"predictive after 4 Whites", predictive(four), 0.9039837, 5e-8, false});
  add_vector("n=20 x=20", update_sequence(prior, {20, 20}),
             {0.0, 1.036587e-14, 1.086940e-08, 3.614356e-05, 1.139740e-02, 9.885665e-01}, 1e-6, true);
  add_vector("n=20 x=5", update_sequence(prior, {20, 5}),
             {0.0, 6.968411e-01, 2.979907e-01, 5.167614e-03, 6.645594e-07, 0.0}, 1e-6, true);
  const auto six = run_six_draw_game(std::nullopt, 2);
  add_vector("n=6 x=2", six.posterior, {0.0, 0.34594595, 0.43783784, 0.19459459, 0.02162162, 0.0}, 5e-9, false);
  rows.push_back({"predictive n=6 x=2", six.predictive, 0.3783784, 5e-8, false});
  const auto restricted = std::make_shared<const HypothesisSpace>(HypothesisSpace::restricted(5, {1, 2, 3, 4, 5}));
  rows.push_back({"B1..B5 marginal White", predictive(uniform_prior(restricted)), 0.6, 1e-15, false});
  rows.push_back({"rule of succession n=2 x=2", rule_of_succession({2, 2}), 0.75, 0.0, false});
  rows.push_back({"P(|f_n-1/2|>1/sqrt n), gaussian", frequency_deviation_probability(
                                                         100000, 0.5, 1.0 / std::sqrt(1e5), DeviationMethod::Gaussian),
                  0.046, 5e-4, false});
  rows.push_back({"odds 11000:1 as probability", odds_to_probability(OddsValue(11000)), 0.9999, 5e-5, false});
  rows.push_back({"belief 0.7/0.8/0.9 mean", triangular_mean(TriangularBelief(0.7, 0.8, 0.9)), 0.8, 1e-12, false});

  std::printf("%-40s %16s %16s %s\n", "quantity", "computed", "reference", "match");
  int bad = 0;
  for (const auto& r : rows) {
    const bool ok = r.relative && r.reference != 0.0
                        ? std::abs(r.computed / r.reference - 1.0) <= r.tolerance
                        : std::abs(r.computed - r.reference) <= r.tolerance;
    bad += ok ? 0 : 1;
    std::printf("%-40s %16.9g %16.9g %s\n", r.label.c_str(), r.computed, r.reference, ok ? "yes" : "NO");
  }
  if (bad == 0) {
    std::printf("all %zu values match\n", rows.size());
    return 0;
  }
  std::printf("%d of %zu values do not match\n", bad, rows.size());
  return 1;
}

// ---- play -----------------------------------------------------------------

int run_play(std::optional<std::uint64_t> seed, const std::string& store_dir) {
  SessionManager sessions(store_dir.empty() ? std::nullopt : std::optional<SessionStore>(SessionStore(store_dir)));
  const auto created = sessions.create(seed, SpaceConfig{});
  const std::string id = created.session_id;
  std::cout << "session " << id << "\n"
            << "A box was picked at random from B0..B5 (Bi holds i white balls out of 5).\n"
            << "commands: draw [k] | state | lottery W|B mystery|equal | end | help\n"
            << "belief " << format_belief(created.belief) << "\n";

  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    std::istringstream in(line);
    std::string cmd;
    in >> cmd;
    try {
      if (cmd.empty()) continue;
      if (cmd == "draw" || cmd == "d") {
        int count = 1;
        in >> count;
        for (int k = 0; k < std::max(count, 1); ++k) {
          const auto out = sessions.draw(id);
          std::cout << "#" << out.draw_index << " " << to_string(out.color) << "  belief "
                    << format_belief(out.belief_after) << "  P(next W)=" << out.predictive_after << "\n";
        }
      } else if (cmd == "state" || cmd == "s") {
        const auto snap = sessions.state(id);
        std::string draws;
        for (const auto& ev : snap.history) {
          if (const auto* d = std::get_if<DrawEvent>(&ev.kind)) draws += to_string(d->color);
        }
        std::cout << "phase " << to_string(snap.phase) << "  draws " << (draws.empty() ? "-" : draws) << "\n"
                  << "belief " << format_belief(snap.belief) << "  P(next W)=" << snap.predictive << "\n";
      } else if (cmd == "lottery" || cmd == "l") {
        std::string color, choice;
        in >> color >> choice;
        const auto out = sessions.lottery(id, LotteryScenario{parse_color(color)}, parse_lottery_option(choice));
        std::cout << "recorded " << to_string(std::get<LotteryChoiceEvent>(out.recorded.kind).choice)
                  << "; P(win) mystery box " << out.expected_values.mystery_box << ", half-white box "
                  << out.expected_values.equal_box << "\n";
      } else if (cmd == "end" || cmd == "e" || cmd == "quit" || cmd == "q") {
        const auto summary = sessions.end(id);
        std::cout << "final belief " << format_belief(summary.final_belief) << "\n"
                  << "P(next W)=" << summary.predictive << "\n"
                  << "The box goes back with the others; the box is not revealed.\n";
        return 0;
      } else {
        std::cout << "commands: draw [k] | state | lottery W|B mystery|equal | end\n";
      }
    } catch (const Error& e) {
      std::cout << "error: " << e.what() << "\n";
    }
  }
  sessions.end(id);
  std::cout << "\ninput closed; the box is not revealed.\n";
  return 0;
}

// ---- serve ----------------------------------------------------------------

int run_serve(const std::string& host, int port, const std::string& store_dir) {
  if (port < 0) {
    const char* env = std::getenv("SIXBOX_PORT");
    port = env ? std::atoi(env) : 8080;
  }
  SessionManager sessions(store_dir.empty() ? std::nullopt : std::optional<SessionStore>(SessionStore(store_dir)));
  HttpServer server(sessions);
  const int bound = server.bind(host, port);
  std::cerr << "listening on http://" << host << ":" << bound << "\n";
  server.listen();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sixbox: sequential Bayesian inference on the six-box urn game"};
  app.require_subcommand(1);

  auto* reproduce = app.add_subcommand("reproduce", "Print every reference number next to its computed value");

  std::optional<std::uint64_t> play_seed;
  std::string play_store;
  auto* play = app.add_subcommand("play", "Interactive game in the terminal");
  play->add_option("--seed", play_seed, "Seed for the sealed box and the draws");
  play->add_option("--store", play_store, "Directory for session files");

  std::string host = "127.0.0.1";
  int port = -1;
  std::string serve_store;
  auto* serve = app.add_subcommand("serve", "Start the HTTP/JSON session API");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port (default: $SIXBOX_PORT or 8080)");
  serve->add_option("--store", serve_store, "Directory for session files");

  int box = -1;
  double p = -1.0;
  std::int64_t n = 100;
  std::int64_t trials = 0;
  std::uint64_t seed = 1;
  std::string method;
  double epsilon = 0.0;
  auto* simulate = app.add_subcommand("simulate", "Draw with replacement; optionally histogram or deviation checks");
  simulate->add_option("--box", box, "Box index (propensity box/5)");
  simulate->add_option("--p", p, "Propensity, instead of --box");
  simulate->add_option("--n", n, "Draws per sequence")->check(CLI::NonNegativeNumber);
  simulate->add_option("--trials", trials, "Repeat n-draw experiments and report TV distance to the binomial pmf");
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--method", method, "Also report P(|f_n - p| > eps): exact|gaussian");
  simulate->add_option("--epsilon", epsilon, "Deviation threshold (default 1/sqrt(n))");

  int cmp_box = 1;
  std::int64_t cmp_n = 100;
  std::int64_t cmp_trials = 1000;
  std::uint64_t cmp_seed = 1;
  bool no_records = false;
  auto* compare = app.add_subcommand("compare", "Bayesian predictive versus raw frequency");
  compare->add_option("--box", cmp_box, "True box index");
  compare->add_option("--n", cmp_n, "Draws per trial");
  compare->add_option("--trials", cmp_trials, "Number of trials");
  compare->add_option("--seed", cmp_seed, "RNG seed");
  compare->add_flag("--no-records", no_records, "Omit per-trial records");

  std::int64_t succ_n = 0, succ_x = 0;
  double mass = 0.95;
  auto* succession = app.add_subcommand("succession", "Rule of succession and Beta posterior summary");
  succession->add_option("--n", succ_n, "Draws")->required();
  succession->add_option("--x", succ_x, "Whites")->required();
  succession->add_option("--mass", mass, "Central credible mass");

  std::string spec_path;
  auto* prop = app.add_subcommand("propagate", "Monte Carlo propagation of uncertain probabilities");
  prop->add_option("--spec", spec_path, "JSON request file, '-' for stdin")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*reproduce) return run_reproduce();
    if (*play) return run_play(play_seed, play_store);
    if (*serve) return run_serve(host, port, serve_store);

    if (*simulate) {
      if (box >= 0) p = BoxHypothesis(box, HypothesisSpace::kDefaultTotalBalls).propensity();
      if (p < 0.0) throw DomainError("give --box or --p");
      Json out;
      if (trials > 0) {
        out = Json{{"trials", trials}, {"n", n}, {"p", p}, {"seed", seed},
                   {"total_variation", histogram_vs_pmf(trials, n, p, seed)}};
      } else {
        out = to_json(simulate_draws(p, n, seed));
      }
      if (!method.empty()) {
        const double eps = epsilon > 0.0 ? epsilon : 1.0 / std::sqrt(static_cast<double>(n));
        out["deviation"] = Json{{"method", method}, {"epsilon", eps},
                                {"probability", frequency_deviation_probability(n, p, eps, parse_deviation_method(method))}};
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*compare) {
      const auto space = HypothesisSpace::full();
      const auto report = compare_estimators(BoxHypothesis(cmp_box, space.total_balls()), space, cmp_n, cmp_trials, cmp_seed);
      std::cout << to_json(report, !no_records).dump(2) << "\n";
      return 0;
    }
    if (*succession) {
      const auto summary = SequenceSummary::make(succ_n, succ_x);
      const BetaPosterior post(summary);
      const auto [lo, hi] = credible_interval(post, mass);
      const Json out{{"n", succ_n},
                     {"x", succ_x},
                     {"rule_of_succession", rule_of_succession(summary)},
                     {"predictive_from_density", predictive_from_density(post)},
                     {"credible_interval", Json{{"mass", mass}, {"lo", lo}, {"hi", hi}}}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*prop) {
      Json spec;
      if (spec_path == "-") {
        spec = Json::parse(std::cin);
      } else {
        std::ifstream in(spec_path);
        if (!in) throw ConfigError("cannot open " + spec_path);
        spec = Json::parse(in);
      }
      const auto req = propagation_request_from_json(spec);
      for (const auto& b : req.beliefs) {
        if (auto warn = b.lint()) std::cerr << "warning: " << *warn << "\n";
      }
      const auto summary = propagate(req.beliefs, find_combiner(req.combiner), req.samples, req.seed);
      std::cout << to_json(summary).dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

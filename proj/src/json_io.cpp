#include "sixbox/json_io.hpp"

#include "sixbox/error.hpp"
#include "sixbox/rng.hpp"

namespace sixbox {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw DomainError(std::string("field '") + key + "' has the wrong type");
  }
}

std::string colors_string(const std::vector<DrawColor>& colors) {
  std::string out;
  out.reserve(colors.size());
  for (DrawColor c : colors) out += to_string(c);
  return out;
}

}  // namespace

Json to_json(const BeliefVector& belief) {
  return Json(std::vector<double>(belief.mass().begin(), belief.mass().end()));
}

Json to_json(const LotteryChoiceEvent& choice) {
  return Json{{"winning_color", to_string(choice.scenario.winning_color)}, {"choice", to_string(choice.choice)}};
}

Json to_json(const SessionEvent& event) {
  Json j{{"index", event.index}, {"timestamp_ms", event.timestamp.time_since_epoch().count()}};
  if (const auto* draw = std::get_if<DrawEvent>(&event.kind)) {
    j["kind"] = "draw";
    j["color"] = to_string(draw->color);
  } else if (const auto* lottery = std::get_if<LotteryChoiceEvent>(&event.kind)) {
    j["kind"] = "lottery";
    j.update(to_json(*lottery));
  } else {
    j["kind"] = "end";
  }
  return j;
}

SessionEvent session_event_from_json(const Json& j) {
  SessionEvent ev;
  ev.index = field<std::int64_t>(j, "index");
  ev.timestamp = Timestamp(std::chrono::milliseconds(field<std::int64_t>(j, "timestamp_ms")));
  const auto kind = field<std::string>(j, "kind");
  if (kind == "draw") {
    ev.kind = DrawEvent{parse_color(field<std::string>(j, "color"))};
  } else if (kind == "lottery") {
    ev.kind = LotteryChoiceEvent{LotteryScenario{parse_color(field<std::string>(j, "winning_color"))},
                                 parse_lottery_option(field<std::string>(j, "choice"))};
  } else if (kind == "end") {
    ev.kind = EndEvent{};
  } else {
    throw DomainError("unknown event kind '" + kind + "'");
  }
  return ev;
}

Json to_json(const SpaceConfig& config) {
  Json j{{"total_balls", config.total_balls}};
  if (config.indices) j["indices"] = *config.indices;
  return j;
}

SpaceConfig space_config_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("space must be an object");
  SpaceConfig config;
  if (j.contains("total_balls")) config.total_balls = field<int>(j, "total_balls");
  if (j.contains("indices")) config.indices = field<std::vector<int>>(j, "indices");
  return config;
}

Json to_json(const ExpectedValues& values) {
  return Json{{"mystery_box", values.mystery_box}, {"equal_box", values.equal_box}};
}

Json to_json(const SessionSnapshot& snapshot) {
  Json history = Json::array();
  for (const auto& ev : snapshot.history) history.push_back(to_json(ev));
  return Json{{"session_id", snapshot.session_id},
              {"belief", to_json(snapshot.belief)},
              {"predictive", snapshot.predictive},
              {"history", std::move(history)},
              {"phase", to_string(snapshot.phase)}};
}

Json to_json(const SessionSummary& summary) {
  Json lotteries = Json::array();
  for (const auto& l : summary.lottery_record) lotteries.push_back(to_json(l));
  return Json{{"session_id", summary.session_id},
              {"final_belief", to_json(summary.final_belief)},
              {"predictive", summary.predictive},
              {"draws", colors_string(summary.draws)},
              {"lottery_record", std::move(lotteries)}};
}

Json to_json(const ComparisonReport& report, bool include_records) {
  Json j{{"trials", report.trials},
         {"true_box_index", report.true_box_index},
         {"draws_per_trial", report.draws_per_trial},
         {"true_propensity", report.true_propensity},
         {"mean_abs_error_bayes", report.mean_abs_error_bayes},
         {"mean_abs_error_frequency", report.mean_abs_error_frequency},
         {"mean_squared_error_bayes", report.mean_squared_error_bayes},
         {"mean_squared_error_frequency", report.mean_squared_error_frequency},
         {"seed", report.seed},
         {"rng_algorithm", report.rng_algorithm}};
  if (include_records) {
    Json records = Json::array();
    for (const auto& r : report.per_trial_records) {
      records.push_back(Json{{"x", r.x},
                             {"bayes_predictive", r.bayes_predictive},
                             {"frequency", r.frequency},
                             {"squared_error_bayes", r.squared_error_bayes},
                             {"squared_error_frequency", r.squared_error_frequency}});
    }
    j["per_trial_records"] = std::move(records);
  }
  return j;
}

Json to_json(const PropagationSummary& summary) {
  return Json{{"combiner", summary.combiner}, {"samples", summary.samples}, {"seed", summary.seed},
              {"rng_algorithm", summary.rng_algorithm}, {"mean", summary.mean}, {"sd", summary.sd},
              {"quantiles", Json{{"0.05", summary.q05}, {"0.50", summary.q50}, {"0.95", summary.q95}}}};
}

Json to_json(const DrawSequence& sequence) {
  const auto summary = sequence.summary();
  return Json{{"outcomes", colors_string(sequence.outcomes)},
              {"n", summary.n},
              {"x", summary.x},
              {"frequency", summary.n > 0 ? static_cast<double>(summary.x) / static_cast<double>(summary.n) : 0.0},
              {"propensity", sequence.propensity_used},
              {"seed", sequence.seed},
              {"rng_algorithm", std::string(kRngAlgorithm)}};
}

TriangularBelief triangular_from_json(const Json& j) {
  if (j.is_number()) return TriangularBelief::certain(j.get<double>());
  return TriangularBelief(field<double>(j, "lo"), field<double>(j, "mode"), field<double>(j, "hi"));
}

PropagationRequest propagation_request_from_json(const Json& j) {
  PropagationRequest req;
  const auto beliefs = field<Json>(j, "beliefs");
  if (!beliefs.is_array()) throw DomainError("'beliefs' must be an array");
  for (const auto& b : beliefs) req.beliefs.push_back(triangular_from_json(b));
  req.combiner = field<std::string>(j, "combiner");
  req.samples = field<std::int64_t>(j, "samples");
  req.seed = field<std::uint64_t>(j, "seed");
  return req;
}

}  // namespace sixbox

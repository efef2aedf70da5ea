#pragma once
// JSON wire formats. Beliefs are arrays of numbers in hypothesis order and
// colors are "W" / "B".

#include <json.hpp>

#include "sixbox/frequency.hpp"
#include "sixbox/hypothesis.hpp"
#include "sixbox/session.hpp"
#include "sixbox/uncertainty.hpp"

namespace sixbox {

using Json = nlohmann::json;

Json to_json(const BeliefVector& belief);
Json to_json(const SessionEvent& event);
Json to_json(const LotteryChoiceEvent& choice);
Json to_json(const SpaceConfig& config);
Json to_json(const ExpectedValues& values);
Json to_json(const SessionSnapshot& snapshot);
Json to_json(const SessionSummary& summary);
Json to_json(const ComparisonReport& report, bool include_records = true);
Json to_json(const PropagationSummary& summary);
Json to_json(const DrawSequence& sequence);

// Parsers throw DomainError on malformed input.
SessionEvent session_event_from_json(const Json& j);
SpaceConfig space_config_from_json(const Json& j);
TriangularBelief triangular_from_json(const Json& j);

// {"beliefs": [{"lo","mode","hi"}...], "combiner": name, "samples": n, "seed": s}
struct PropagationRequest {
  std::vector<TriangularBelief> beliefs;
  std::string combiner;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};
PropagationRequest propagation_request_from_json(const Json& j);

}  // namespace sixbox

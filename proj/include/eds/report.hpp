#pragma once

#include "eds/case1.hpp"
#include "eds/minors.hpp"
#include "eds/monge_ampere.hpp"
#include "eds/reductions.hpp"
#include "eds/scenario.hpp"

#include <json.hpp>

namespace eds {

using json = nlohmann::json;

json to_json(const CartanReport& r);
json to_json(const ScenarioResult& r);
json to_json(const ReductionTranscript& t);
json to_json(const Registry& reg, const MATypeResult& r);

// version, golden data hash, command echo and seed around a payload
json envelope(const std::string& command, std::uint64_t seed, const json& results);

}

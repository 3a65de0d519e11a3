#pragma once

#include <json.hpp>

#include "rankaudit/constraints.hpp"
#include "rankaudit/diagnosis.hpp"
#include "rankaudit/graph.hpp"
#include "rankaudit/ranking.hpp"
#include "rankaudit/sensitivity.hpp"

// JSON shapes shared by the cache file, the HTTP API and the CLI. Objects keep
// insertion order so equal values always dump to equal bytes.
namespace rankaudit {

using Json = nlohmann::ordered_json;

// Appends a member without scanning for an existing key; the caller guarantees
// uniqueness. Keeps building large sorted objects linear.
inline void append_member(Json& object, const std::string& key, Json value) {
    if (object.is_null()) {
        object = Json::object();
    }
    auto& members = static_cast<Json::object_t::Container&>(object.get_ref<Json::object_t&>());
    members.emplace_back(key, std::move(value));
}

Json to_json(const GraphSummary& summary);

Json to_json(const RankingConfig& cfg, BaselineMode mode);
// Throws Error(invalid_argument) on missing or malformed fields.
std::pair<RankingConfig, BaselineMode> config_from_json(const Json& j);

Json to_json(const RankingPositions& positions);
RankingPositions positions_from_json(const Json& j);

Json to_json(const SensitivityRecord& record);
SensitivityRecord record_from_json(const Json& j);

Json to_json(const SensitivityTable& table);
SensitivityTable table_from_json(const Json& j);

// Survivor -> delta object.
Json to_json(const DeltaVector& d);
DeltaVector deltas_from_json(const NodeId& removed, const Json& j);

Json to_json(const PerturbationOverview& overview);
Json to_json(const RankingChangeRecord& change);
Json to_json(const TopKProportions& topk);
Json to_json(const InfluenceGraph& ig);
Json to_json(const PerturbationReport& report);
PerturbationReport report_from_json(const Json& j);

// Rule schema: {id, protected:[...], direction:"no_decrease"|"no_increase",
// threshold, kind:"abs"|"pct"}.
Json to_json(const ConstraintRule& rule);
ConstraintRule rule_from_json(const Json& j);
Json to_json(const RuleSet& rules);
RuleSet rules_from_json(const Json& j);

} // namespace rankaudit

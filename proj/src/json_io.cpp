#include "rankaudit/json_io.hpp"

#include "rankaudit/error.hpp"

namespace rankaudit {

namespace {

template <typename Fn>
auto guarded(std::string_view what, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::invalid_argument, "malformed " + std::string(what) + ": " + e.what(),
                    std::string(what));
    }
}

Json hop_to_json(int hop) {
    return hop == kHopInf ? Json("inf") : Json(hop);
}

int hop_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "inf") {
            throw Error(ErrorCode::invalid_argument, "hop must be an integer or \"inf\"", "hop");
        }
        return kHopInf;
    }
    return j.get<int>();
}

template <typename Value>
std::map<Label, Value> label_map_from_json(const Json& j) {
    std::map<Label, Value> result;
    for (const auto& [label, value] : j.items()) {
        result.emplace(label, value.template get<Value>());
    }
    return result;
}

template <typename Map>
Json label_map_to_json(const Map& m) {
    Json j = Json::object();
    for (const auto& [label, value] : m) {
        append_member(j, label, value);
    }
    return j;
}

} // namespace

Json to_json(const GraphSummary& summary) {
    Json j;
    j["node_count"] = summary.nodeCount;
    j["edge_count"] = summary.edgeCount;
    j["label_counts"] = label_map_to_json(summary.labelCounts);
    return j;
}

Json to_json(const RankingConfig& cfg, BaselineMode mode) {
    Json j;
    j["method"] = to_string(cfg.method);
    j["damping"] = cfg.damping;
    j["tolerance"] = cfg.tolerance;
    j["max_iterations"] = cfg.maxIterations;
    j["hits_score_kind"] = to_string(cfg.hitsScoreKind);
    Json teleport = Json::object();
    for (const auto& [node, weight] : cfg.teleportation) {
        teleport[node] = weight;
    }
    j["teleportation"] = std::move(teleport);
    j["baseline"] = to_string(mode);
    return j;
}

std::pair<RankingConfig, BaselineMode> config_from_json(const Json& j) {
    return guarded("config", [&] {
        RankingConfig cfg;
        cfg.method = parse_ranking_method(j.at("method").get<std::string>());
        cfg.damping = j.at("damping").get<double>();
        cfg.tolerance = j.at("tolerance").get<double>();
        cfg.maxIterations = j.at("max_iterations").get<int>();
        cfg.hitsScoreKind = parse_hits_score_kind(j.at("hits_score_kind").get<std::string>());
        for (const auto& [node, weight] : j.at("teleportation").items()) {
            cfg.teleportation.emplace(node, weight.get<double>());
        }
        return std::pair{cfg, parse_baseline_mode(j.at("baseline").get<std::string>())};
    });
}

Json to_json(const RankingPositions& positions) {
    Json j = Json::object();
    for (std::size_t i = 0; i < positions.size(); ++i) {
        append_member(j, positions.nodes[i], positions.positions[i]);
    }
    return j;
}

RankingPositions positions_from_json(const Json& j) {
    return guarded("positions", [&] {
        RankingPositions result;
        for (const auto& [node, position] : j.items()) {
            result.nodes.push_back(node);
            result.positions.push_back(position.get<int>());
        }
        return result;
    });
}

Json to_json(const SensitivityRecord& record) {
    Json j;
    j["node"] = record.node;
    j["original_rank"] = record.originalRank;
    j["si"] = record.si;
    j["si_pos"] = record.siPos;
    j["si_neg"] = record.siNeg;
    j["per_label_pos"] = label_map_to_json(record.perLabelPos);
    j["per_label_neg"] = label_map_to_json(record.perLabelNeg);
    return j;
}

SensitivityRecord record_from_json(const Json& j) {
    return guarded("sensitivity record", [&] {
        SensitivityRecord record;
        record.node = j.at("node").get<std::string>();
        record.originalRank = j.at("original_rank").get<int>();
        record.si = j.at("si").get<std::int64_t>();
        record.siPos = j.at("si_pos").get<std::int64_t>();
        record.siNeg = j.at("si_neg").get<std::int64_t>();
        record.perLabelPos = label_map_from_json<std::int64_t>(j.at("per_label_pos"));
        record.perLabelNeg = label_map_from_json<std::int64_t>(j.at("per_label_neg"));
        return record;
    });
}

Json to_json(const SensitivityTable& table) {
    Json records = Json::array();
    for (const auto& record : table.records) {
        records.push_back(to_json(record));
    }
    Json j;
    j["fingerprint"] = table.fingerprint;
    j["records"] = std::move(records);
    return j;
}

SensitivityTable table_from_json(const Json& j) {
    return guarded("table", [&] {
        SensitivityTable table;
        table.fingerprint = j.at("fingerprint").get<std::string>();
        for (const auto& record : j.at("records")) {
            table.records.push_back(record_from_json(record));
        }
        return table;
    });
}

Json to_json(const DeltaVector& d) {
    Json j = Json::object();
    for (const auto& entry : d.entries) {
        append_member(j, entry.node, entry.delta);
    }
    return j;
}

DeltaVector deltas_from_json(const NodeId& removed, const Json& j) {
    return guarded("deltas", [&] {
        DeltaVector d;
        d.removed = removed;
        for (const auto& [node, delta] : j.items()) {
            d.entries.push_back({node, delta.get<int>()});
        }
        return d;
    });
}

Json to_json(const PerturbationOverview& o) {
    Json j;
    j["influenced_count"] = o.influencedCount;
    j["increased_count"] = o.increasedCount;
    j["decreased_count"] = o.decreasedCount;
    j["max_increase"] = o.maxIncrease;
    j["max_decrease"] = o.maxDecrease;
    j["median_increase"] = o.medianIncrease;
    j["median_decrease"] = o.medianDecrease;
    j["removed_degree"] = o.removedDegree;
    return j;
}

Json to_json(const RankingChangeRecord& c) {
    Json j;
    j["node"] = c.node;
    j["previous_rank"] = c.previousRank;
    j["perturbed_rank"] = c.perturbedRank;
    j["delta"] = c.delta;
    j["label"] = c.label;
    return j;
}

Json to_json(const TopKProportions& topk) {
    Json j;
    j["k"] = topk.k;
    j["before"] = label_map_to_json(topk.before);
    j["after"] = label_map_to_json(topk.after);
    return j;
}

Json to_json(const InfluenceGraph& ig) {
    Json nodes = Json::array();
    for (const auto& n : ig.nodes) {
        Json node;
        node["node"] = n.node;
        node["hop"] = hop_to_json(n.hop);
        node["ring"] = hop_to_json(display_ring(n.hop));
        node["delta"] = n.delta;
        node["label"] = n.label;
        nodes.push_back(std::move(node));
    }
    Json edges = Json::array();
    for (const auto& e : ig.edges) {
        Json edge;
        edge["source"] = e.source;
        edge["target"] = e.target;
        edge["kind"] = to_string(e.kind);
        edges.push_back(std::move(edge));
    }
    Json j;
    j["removed"] = ig.removed;
    j["nodes"] = std::move(nodes);
    j["edges"] = std::move(edges);
    return j;
}

Json to_json(const PerturbationReport& report) {
    Json changes = Json::array();
    for (const auto& c : report.changes) {
        changes.push_back(to_json(c));
    }
    Json j;
    j["removed"] = report.removed;
    j["fingerprint"] = report.fingerprint;
    j["baseline"] = to_string(report.mode);
    j["overview"] = to_json(report.overview);
    j["changes"] = std::move(changes);
    j["topk"] = to_json(report.topk);
    j["influence"] = to_json(report.influence);
    return j;
}

PerturbationReport report_from_json(const Json& j) {
    return guarded("report", [&] {
        PerturbationReport report;
        report.removed = j.at("removed").get<std::string>();
        report.fingerprint = j.at("fingerprint").get<std::string>();
        report.mode = parse_baseline_mode(j.at("baseline").get<std::string>());

        const auto& o = j.at("overview");
        report.overview.influencedCount = o.at("influenced_count").get<std::size_t>();
        report.overview.increasedCount = o.at("increased_count").get<std::size_t>();
        report.overview.decreasedCount = o.at("decreased_count").get<std::size_t>();
        report.overview.maxIncrease = o.at("max_increase").get<int>();
        report.overview.maxDecrease = o.at("max_decrease").get<int>();
        report.overview.medianIncrease = o.at("median_increase").get<double>();
        report.overview.medianDecrease = o.at("median_decrease").get<double>();
        report.overview.removedDegree = o.at("removed_degree").get<std::size_t>();

        for (const auto& c : j.at("changes")) {
            report.changes.push_back({c.at("node").get<std::string>(),
                                      c.at("previous_rank").get<int>(),
                                      c.at("perturbed_rank").get<int>(), c.at("delta").get<int>(),
                                      c.at("label").get<std::string>()});
        }

        const auto& topk = j.at("topk");
        report.topk.k = topk.at("k").get<std::size_t>();
        report.topk.before = label_map_from_json<double>(topk.at("before"));
        report.topk.after = label_map_from_json<double>(topk.at("after"));

        const auto& ig = j.at("influence");
        report.influence.removed = ig.at("removed").get<std::string>();
        for (const auto& n : ig.at("nodes")) {
            report.influence.nodes.push_back({n.at("node").get<std::string>(),
                                              hop_from_json(n.at("hop")), n.at("delta").get<int>(),
                                              n.at("label").get<std::string>()});
        }
        for (const auto& e : ig.at("edges")) {
            const auto kind = e.at("kind").get<std::string>();
            report.influence.edges.push_back(
                {e.at("source").get<std::string>(), e.at("target").get<std::string>(),
                 kind == "traversal" ? InfluenceEdgeKind::traversal : InfluenceEdgeKind::inf_attach});
        }
        return report;
    });
}

Json to_json(const ConstraintRule& rule) {
    Json j;
    j["id"] = rule.id;
    j["protected"] = rule.protectedNodes;
    j["direction"] = to_string(rule.direction);
    j["threshold"] = rule.threshold;
    j["kind"] = to_string(rule.kind);
    return j;
}

ConstraintRule rule_from_json(const Json& j) {
    return guarded("rule", [&] {
        ConstraintRule rule;
        rule.id = j.at("id").get<std::string>();
        for (const auto& node : j.at("protected")) {
            rule.protectedNodes.insert(node.get<std::string>());
        }
        rule.direction = parse_rule_direction(j.at("direction").get<std::string>());
        rule.threshold = j.at("threshold").get<double>();
        rule.kind = parse_threshold_kind(j.value("kind", std::string("abs")));
        rule.validate();
        return rule;
    });
}

Json to_json(const RuleSet& rules) {
    Json j = Json::array();
    for (const auto& rule : rules.rules()) {
        j.push_back(to_json(rule));
    }
    return j;
}

RuleSet rules_from_json(const Json& j) {
    return guarded("rules", [&] {
        const Json& list = j.is_object() ? j.at("rules") : j;
        if (!list.is_array()) {
            throw Error(ErrorCode::invalid_argument, "rules must be a JSON array", "rules");
        }
        RuleSet rules;
        for (const auto& rule : list) {
            rules.add(rule_from_json(rule));
        }
        return rules;
    });
}

} // namespace rankaudit

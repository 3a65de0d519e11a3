#include "rankaudit/diagnosis.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "rankaudit/error.hpp"

namespace rankaudit {

namespace {

double median_of(std::vector<int> values) {
    if (values.empty()) {
        return 0.0;
    }
    std::sort(values.begin(), values.end());
    const auto mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid])) / 2.0;
}

bool direction_matches(int delta, InfluenceDirection direction) {
    switch (direction) {
    case InfluenceDirection::all: return true;
    case InfluenceDirection::increased: return delta > 0;
    case InfluenceDirection::decreased: return delta < 0;
    }
    return false;
}

std::map<Label, double> top_fractions(const RankingPositions& ranking, const DirectedGraph& g,
                                      std::size_t k) {
    std::vector<std::size_t> order(ranking.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return ranking.positions[a] < ranking.positions[b];
    });
    std::map<Label, std::size_t> counts;
    for (const auto& label : g.label_universe()) {
        counts.emplace(label, 0);
    }
    for (std::size_t r = 0; r < k; ++r) {
        ++counts[g.label(ranking.nodes[order[r]])];
    }
    std::map<Label, double> fractions;
    for (const auto& [label, count] : counts) {
        fractions.emplace(label, static_cast<double>(count) / static_cast<double>(k));
    }
    return fractions;
}

} // namespace

int display_ring(int hop) noexcept {
    if (hop == kHopInf || hop <= kMaxMaterializedHop) {
        return hop;
    }
    return kMaxMaterializedHop + 1;
}

std::string_view to_string(InfluenceDirection direction) noexcept {
    switch (direction) {
    case InfluenceDirection::all: return "all";
    case InfluenceDirection::increased: return "increased";
    case InfluenceDirection::decreased: return "decreased";
    }
    return "all";
}

InfluenceDirection parse_influence_direction(std::string_view text) {
    if (text == "all") return InfluenceDirection::all;
    if (text == "increased") return InfluenceDirection::increased;
    if (text == "decreased") return InfluenceDirection::decreased;
    throw Error(ErrorCode::invalid_argument, "unknown direction '" + std::string(text) + "'",
                "direction");
}

std::string_view to_string(InfluenceEdgeKind kind) noexcept {
    return kind == InfluenceEdgeKind::traversal ? "traversal" : "inf_attach";
}

const InfluenceNode* InfluenceGraph::find(const NodeId& node) const {
    const auto it = std::find_if(nodes.begin(), nodes.end(),
                                 [&](const InfluenceNode& n) { return n.node == node; });
    return it != nodes.end() ? &*it : nullptr;
}

PerturbationOverview overview_stats(const DeltaVector& d, const DirectedGraph& g) {
    PerturbationOverview overview;
    std::vector<int> increases;
    std::vector<int> decreases;
    for (const auto& entry : d.entries) {
        if (entry.delta > 0) {
            increases.push_back(entry.delta);
        } else if (entry.delta < 0) {
            decreases.push_back(-entry.delta);
        }
    }
    overview.increasedCount = increases.size();
    overview.decreasedCount = decreases.size();
    overview.influencedCount = increases.size() + decreases.size();
    if (!increases.empty()) {
        overview.maxIncrease = *std::max_element(increases.begin(), increases.end());
    }
    if (!decreases.empty()) {
        overview.maxDecrease = *std::max_element(decreases.begin(), decreases.end());
    }
    overview.medianIncrease = median_of(std::move(increases));
    overview.medianDecrease = median_of(std::move(decreases));
    overview.removedDegree = degree(g, d.removed).total;
    return overview;
}

std::vector<RankingChangeRecord> change_records(const DirectedGraph& g,
                                                const RankingPositions& baseline,
                                                const DeltaVector& d) {
    const auto after = perturbed_positions(baseline, d);
    std::vector<RankingChangeRecord> records;
    records.reserve(d.entries.size());
    for (std::size_t i = 0; i < d.entries.size(); ++i) {
        const auto& node = d.entries[i].node;
        records.push_back({node, baseline.positions[i], after.positions[i], d.entries[i].delta,
                           g.label(node)});
    }
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return a.previousRank != b.previousRank ? a.previousRank < b.previousRank : a.node < b.node;
    });
    return records;
}

TopKProportions topk_proportions(const RankingPositions& before, const RankingPositions& after,
                                 const DirectedGraph& g, std::size_t k) {
    if (before.nodes != after.nodes) {
        throw Error(ErrorCode::invalid_argument, "rankings cover different node sets");
    }
    if (k < 1 || k > after.size()) {
        throw Error(ErrorCode::out_of_bounds,
                    "k must lie in [1, " + std::to_string(after.size()) + "]", "k");
    }
    return {k, top_fractions(before, g, k), top_fractions(after, g, k)};
}

InfluenceGraph build_influence_graph(const DirectedGraph& g, const NodeId& removed,
                                     const std::map<NodeId, int>& influenced) {
    const auto root = g.index_of(removed);
    const auto n = g.node_count();
    std::vector<char> isInfluenced(n, 0);
    for (const auto& [node, delta] : influenced) {
        const auto i = g.index_of(node);
        if (i == root) {
            throw Error(ErrorCode::invalid_argument, "removed node cannot be influenced", node);
        }
        isInfluenced[i] = 1;
    }

    InfluenceGraph ig;
    ig.removed = removed;
    ig.nodes.push_back({removed, 0, 0, g.label(root)});

    std::vector<int> hop(n, -1);
    hop[root] = 0;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (const auto w : g.successors(v)) {
            if (!isInfluenced[w] || hop[w] >= 0) {
                continue;
            }
            hop[w] = hop[v] + 1;
            ig.nodes.push_back({g.id(w), hop[w], influenced.at(g.id(w)), g.label(w)});
            ig.edges.push_back({g.id(v), g.id(w), InfluenceEdgeKind::traversal});
            queue.push_back(w);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (isInfluenced[i] && hop[i] < 0) {
            ig.nodes.push_back({g.id(i), kHopInf, influenced.at(g.id(i)), g.label(i)});
            ig.edges.push_back({removed, g.id(i), InfluenceEdgeKind::inf_attach});
        }
    }
    return ig;
}

InfluenceGraph build_influence_graph(const DirectedGraph& g, const DeltaVector& d) {
    std::map<NodeId, int> influenced;
    for (const auto& entry : d.entries) {
        if (entry.delta != 0) {
            influenced.emplace(entry.node, entry.delta);
        }
    }
    return build_influence_graph(g, d.removed, influenced);
}

InfluenceGraph filter_influence(const InfluenceGraph& ig, int hopMin, int hopMax,
                                InfluenceDirection direction) {
    if (hopMin < 1) {
        throw Error(ErrorCode::out_of_bounds, "hopMin must be >= 1", "hopMin");
    }
    if (hopMin > hopMax) {
        throw Error(ErrorCode::out_of_bounds, "hopMin must not exceed hopMax", "hopMax");
    }
    InfluenceGraph result;
    result.removed = ig.removed;
    std::set<NodeId> kept;
    for (const auto& node : ig.nodes) {
        const bool keep = node.node == ig.removed ||
                          (node.hop >= hopMin && node.hop <= hopMax &&
                           direction_matches(node.delta, direction));
        if (keep) {
            result.nodes.push_back(node);
            kept.insert(node.node);
        }
    }
    for (const auto& edge : ig.edges) {
        if (kept.contains(edge.source) && kept.contains(edge.target)) {
            result.edges.push_back(edge);
        }
    }
    return result;
}

PerturbationReport diagnose(const DirectedGraph& g, const RankingPositions& original,
                            BaselineMode mode, const DeltaVector& d, std::size_t k,
                            std::string fingerprint) {
    const auto n = g.node_count();
    if (k < 1 || k + 1 > n) {
        throw Error(ErrorCode::out_of_bounds, "k must lie in [1, " + std::to_string(n - 1) + "]",
                    "k");
    }
    const auto baseline = baseline_positions(original, d.removed, mode);

    PerturbationReport report;
    report.removed = d.removed;
    report.fingerprint = std::move(fingerprint);
    report.mode = mode;
    report.overview = overview_stats(d, g);
    report.changes = change_records(g, baseline, d);
    report.topk = topk_proportions(baseline, perturbed_positions(baseline, d), g, k);
    report.influence = build_influence_graph(g, d);
    return report;
}

PerturbationReport diagnose(const DirectedGraph& g, const RankingConfig& cfg, BaselineMode mode,
                            const NodeId& v, std::size_t k) {
    g.index_of(v);
    const auto original = rank(g, cfg);
    const auto d = ranking_deltas(g, original, cfg, mode, v);
    return diagnose(g, original, mode, d, k, provenance_fingerprint(g, cfg, mode));
}

} // namespace rankaudit

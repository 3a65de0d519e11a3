#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rankaudit/graph.hpp"
#include "rankaudit/ranking.hpp"
#include "rankaudit/sensitivity.hpp"

namespace rankaudit {

// Hop of influenced nodes the traversal never reaches.
inline constexpr int kHopInf = std::numeric_limits<int>::max();

// Hops beyond this share one display ring.
inline constexpr int kMaxMaterializedHop = 9;

// Display ring of a hop: the hop itself up to 9, 10 for "10 or more", kHopInf stays.
int display_ring(int hop) noexcept;

struct PerturbationOverview {
    std::size_t influencedCount = 0;
    std::size_t increasedCount = 0;
    std::size_t decreasedCount = 0;
    int maxIncrease = 0;
    int maxDecrease = 0; // magnitude
    double medianIncrease = 0.0;
    double medianDecrease = 0.0; // magnitude
    std::size_t removedDegree = 0;

    friend bool operator==(const PerturbationOverview&, const PerturbationOverview&) = default;
};

struct RankingChangeRecord {
    NodeId node;
    int previousRank = 0;
    int perturbedRank = 0;
    int delta = 0;
    Label label;

    friend bool operator==(const RankingChangeRecord&, const RankingChangeRecord&) = default;
};

struct TopKProportions {
    std::size_t k = 0;
    std::map<Label, double> before;
    std::map<Label, double> after;

    friend bool operator==(const TopKProportions&, const TopKProportions&) = default;
};

enum class InfluenceEdgeKind { traversal, inf_attach };

struct InfluenceNode {
    NodeId node;
    int hop = 0;
    int delta = 0;
    Label label;

    friend bool operator==(const InfluenceNode&, const InfluenceNode&) = default;
};

struct InfluenceEdge {
    NodeId source;
    NodeId target;
    InfluenceEdgeKind kind = InfluenceEdgeKind::traversal;

    friend bool operator==(const InfluenceEdge&, const InfluenceEdge&) = default;
};

/**
 * Influenced nodes arranged by hop from the removed node.
 *
 * `nodes` starts with the removed node (hop 0), followed by traversal order and
 * finally the unreachable (kHopInf) nodes in NodeId order.
 */
struct InfluenceGraph {
    NodeId removed;
    std::vector<InfluenceNode> nodes;
    std::vector<InfluenceEdge> edges;

    const InfluenceNode* find(const NodeId& node) const;

    friend bool operator==(const InfluenceGraph&, const InfluenceGraph&) = default;
};

enum class InfluenceDirection { all, increased, decreased };

std::string_view to_string(InfluenceDirection direction) noexcept;
InfluenceDirection parse_influence_direction(std::string_view text);
std::string_view to_string(InfluenceEdgeKind kind) noexcept;

struct PerturbationReport {
    NodeId removed;
    std::string fingerprint;
    BaselineMode mode = BaselineMode::compact;
    PerturbationOverview overview;
    std::vector<RankingChangeRecord> changes; // ascending previousRank
    TopKProportions topk;
    InfluenceGraph influence;

    friend bool operator==(const PerturbationReport&, const PerturbationReport&) = default;
};

PerturbationOverview overview_stats(const DeltaVector& d, const DirectedGraph& g);

// Survivors with before/after positions and labels, ordered by previous rank.
std::vector<RankingChangeRecord> change_records(const DirectedGraph& g,
                                                const RankingPositions& baseline,
                                                const DeltaVector& d);

// Label fractions among the k best-ranked entries of each ranking. Labels are
// taken from g; every label of g appears in both maps.
TopKProportions topk_proportions(const RankingPositions& before, const RankingPositions& after,
                                 const DirectedGraph& g, std::size_t k);

/**
 * Breadth-first traversal from `removed` along out-edges of g, entering only
 * influenced nodes that were not visited yet. Frontier nodes expand their
 * successors in NodeId order. Influenced nodes left over get kHopInf and an
 * inf_attach edge from the removed node.
 *
 * `influenced` maps each influenced node to its delta.
 */
InfluenceGraph build_influence_graph(const DirectedGraph& g, const NodeId& removed,
                                     const std::map<NodeId, int>& influenced);

// Influenced = nonzero entries of d.
InfluenceGraph build_influence_graph(const DirectedGraph& g, const DeltaVector& d);

// Keeps the removed node plus nodes with hop in [hopMin, hopMax] whose delta sign
// matches. kHopInf nodes survive only when hopMax == kHopInf.
InfluenceGraph filter_influence(const InfluenceGraph& ig, int hopMin, int hopMax,
                                InfluenceDirection direction);

// Assembles a report from precomputed ranking data (the cache path).
PerturbationReport diagnose(const DirectedGraph& g, const RankingPositions& original,
                            BaselineMode mode, const DeltaVector& d, std::size_t k,
                            std::string fingerprint);

// Computes rankings live.
PerturbationReport diagnose(const DirectedGraph& g, const RankingConfig& cfg, BaselineMode mode,
                            const NodeId& v, std::size_t k);

} // namespace rankaudit

#pragma once

#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "rankaudit/graph.hpp"

namespace rankaudit {

enum class RankingMethod { pagerank, hits };
enum class HitsScoreKind { authority, hub };

std::string_view to_string(RankingMethod method) noexcept;
std::string_view to_string(HitsScoreKind kind) noexcept;
RankingMethod parse_ranking_method(std::string_view text);
HitsScoreKind parse_hits_score_kind(std::string_view text);

struct RankingConfig {
    RankingMethod method = RankingMethod::pagerank;
    double damping = 0.85;
    // Convergence threshold on the L1 change of the iterated vector(s).
    double tolerance = 1e-8;
    int maxIterations = 1000;
    HitsScoreKind hitsScoreKind = HitsScoreKind::authority;
    // Empty means uniform. Entries for nodes absent from the ranked graph are
    // ignored and the rest renormalized, so the same config applies to every
    // node-removed subgraph.
    std::map<NodeId, double> teleportation;

    // Throws Error(invalid_argument).
    void validate() const;

    friend bool operator==(const RankingConfig&, const RankingConfig&) = default;
};

/// Scores aligned with the graph's dense node order (ascending NodeId).
struct RankingScores {
    std::vector<NodeId> nodes;
    std::vector<double> values;
    int iterations = 0;
    double residual = 0.0;
    // L1 change after each iteration, in order.
    std::vector<double> residualHistory;

    // Throws Error(not_found).
    double score(const NodeId& node) const;
};

struct HitsScores {
    RankingScores authority;
    RankingScores hub;
};

/**
 * 1-based positions, 1 = best. Always a bijection onto 1..size() and aligned
 * with `nodes`, which is sorted ascending.
 */
struct RankingPositions {
    std::vector<NodeId> nodes;
    std::vector<int> positions;

    std::size_t size() const noexcept { return nodes.size(); }
    // Throws Error(not_found).
    int position(const NodeId& node) const;

    friend bool operator==(const RankingPositions&, const RankingPositions&) = default;
};

// Power iteration of r = cAr + (1-c)t with A column-stochastic over out-degrees.
// Dangling mass is spread uniformly over all nodes. Starts from t.
RankingScores pagerank(const DirectedGraph& g, const RankingConfig& cfg);

// Authority/hub iteration from all-ones vectors; each vector is L2-normalized
// after every sweep. Throws Error(degenerate_graph) on a graph without edges.
HitsScores hits(const DirectedGraph& g, const RankingConfig& cfg);

// Highest score first; bitwise-equal scores ordered by NodeId ascending.
// Throws Error(invalid_score) on NaN.
RankingPositions scores_to_positions(const RankingScores& scores);

struct PositionRun {
    std::vector<int> positions; // aligned with g's node order
    int iterations = 0;
};

// Positions without materializing ids; the hot path of the sweep.
PositionRun rank_positions(const DirectedGraph& g, const RankingConfig& cfg);

// The single dispatch point for ranking methods.
RankingPositions rank(const DirectedGraph& g, const RankingConfig& cfg);

// Positions for scores listed in NodeId order (ties go to the earlier entry).
std::vector<int> positions_from_scores(std::span<const double> scores);

} // namespace rankaudit

#include "rankaudit/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rankaudit/error.hpp"

namespace rankaudit {

namespace {

double l1_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::abs(a[i] - b[i]);
    }
    return sum;
}

void l2_normalize(std::vector<double>& v) {
    double sq = 0.0;
    for (const double x : v) {
        sq += x * x;
    }
    const double norm = std::sqrt(sq);
    if (norm == 0.0) {
        throw Error(ErrorCode::degenerate_graph, "HITS vector vanished (graph has no edges)");
    }
    for (double& x : v) {
        x /= norm;
    }
}

std::vector<double> teleport_vector(const DirectedGraph& g, const RankingConfig& cfg) {
    const auto n = g.node_count();
    if (cfg.teleportation.empty()) {
        return std::vector<double>(n, 1.0 / static_cast<double>(n));
    }
    std::vector<double> t(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (const auto it = cfg.teleportation.find(g.id(i)); it != cfg.teleportation.end()) {
            t[i] = it->second;
            total += it->second;
        }
    }
    if (total <= 0.0) {
        throw Error(ErrorCode::invalid_argument,
                    "teleportation vector has no mass on the ranked graph", "teleportation");
    }
    for (double& x : t) {
        x /= total;
    }
    return t;
}

RankingScores make_scores(const DirectedGraph& g, std::vector<double> values) {
    RankingScores s;
    s.nodes.assign(g.nodes().begin(), g.nodes().end());
    s.values = std::move(values);
    return s;
}

} // namespace

std::string_view to_string(RankingMethod method) noexcept {
    return method == RankingMethod::pagerank ? "pagerank" : "hits";
}

std::string_view to_string(HitsScoreKind kind) noexcept {
    return kind == HitsScoreKind::authority ? "authority" : "hub";
}

RankingMethod parse_ranking_method(std::string_view text) {
    if (text == "pagerank") return RankingMethod::pagerank;
    if (text == "hits") return RankingMethod::hits;
    throw Error(ErrorCode::invalid_argument, "unknown ranking method '" + std::string(text) + "'",
                "method");
}

HitsScoreKind parse_hits_score_kind(std::string_view text) {
    if (text == "authority") return HitsScoreKind::authority;
    if (text == "hub") return HitsScoreKind::hub;
    throw Error(ErrorCode::invalid_argument, "unknown HITS score kind '" + std::string(text) + "'",
                "hits_score_kind");
}

void RankingConfig::validate() const {
    if (!(damping > 0.0 && damping < 1.0)) {
        throw Error(ErrorCode::invalid_argument, "damping factor must lie in (0,1)", "damping");
    }
    if (!(tolerance > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "tolerance must be positive", "tolerance");
    }
    if (maxIterations < 1) {
        throw Error(ErrorCode::invalid_argument, "max iterations must be >= 1", "max_iterations");
    }
    if (!teleportation.empty()) {
        double sum = 0.0;
        for (const auto& [node, weight] : teleportation) {
            if (!(weight >= 0.0) || !std::isfinite(weight)) {
                throw Error(ErrorCode::invalid_argument,
                            "teleportation weight for '" + node + "' must be nonnegative",
                            "teleportation");
            }
            sum += weight;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw Error(ErrorCode::invalid_argument, "teleportation weights must sum to 1",
                        "teleportation");
        }
    }
}

double RankingScores::score(const NodeId& node) const {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
    if (it == nodes.end() || *it != node) {
        throw Error(ErrorCode::not_found, "unknown node '" + node + "'", node);
    }
    return values[static_cast<std::size_t>(it - nodes.begin())];
}

int RankingPositions::position(const NodeId& node) const {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
    if (it == nodes.end() || *it != node) {
        throw Error(ErrorCode::not_found, "unknown node '" + node + "'", node);
    }
    return positions[static_cast<std::size_t>(it - nodes.begin())];
}

RankingScores pagerank(const DirectedGraph& g, const RankingConfig& cfg) {
    cfg.validate();
    const auto n = g.node_count();
    if (n == 0) {
        throw Error(ErrorCode::empty_graph, "cannot rank an empty graph");
    }
    const double c = cfg.damping;
    const double uniform = 1.0 / static_cast<double>(n);
    const auto teleport = teleport_vector(g, cfg);

    std::vector<double> inverseOutDegree(n, 0.0);
    std::vector<std::size_t> dangling;
    for (std::size_t i = 0; i < n; ++i) {
        const auto deg = g.successors(i).size();
        if (deg == 0) {
            dangling.push_back(i);
        } else {
            inverseOutDegree[i] = 1.0 / static_cast<double>(deg);
        }
    }

    std::vector<double> rank = teleport;
    std::vector<double> next(n);
    std::vector<double> share(n);
    std::vector<double> history;
    double residual = 0.0;
    for (int iter = 1; iter <= cfg.maxIterations; ++iter) {
        double danglingMass = 0.0;
        for (const auto i : dangling) {
            danglingMass += rank[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            share[i] = rank[i] * inverseOutDegree[i];
        }
        const double spread = danglingMass * uniform;
        for (std::size_t v = 0; v < n; ++v) {
            double incoming = spread;
            for (const auto u : g.predecessors(v)) {
                incoming += share[u];
            }
            next[v] = c * incoming + (1.0 - c) * teleport[v];
        }
        residual = l1_distance(next, rank);
        history.push_back(residual);
        rank.swap(next);
        if (residual < cfg.tolerance) {
            auto scores = make_scores(g, std::move(rank));
            scores.iterations = iter;
            scores.residual = residual;
            scores.residualHistory = std::move(history);
            return scores;
        }
    }
    throw ConvergenceError("PageRank did not converge after " + std::to_string(cfg.maxIterations) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           residual, cfg.maxIterations);
}

HitsScores hits(const DirectedGraph& g, const RankingConfig& cfg) {
    cfg.validate();
    const auto n = g.node_count();
    if (n == 0) {
        throw Error(ErrorCode::empty_graph, "cannot rank an empty graph");
    }
    if (g.edge_count() == 0) {
        throw Error(ErrorCode::degenerate_graph, "HITS is undefined on a graph without edges");
    }

    std::vector<double> authority(n, 1.0);
    std::vector<double> hub(n, 1.0);
    std::vector<double> nextAuthority(n);
    std::vector<double> nextHub(n);
    std::vector<double> history;
    double residual = 0.0;
    for (int iter = 1; iter <= cfg.maxIterations; ++iter) {
        for (std::size_t v = 0; v < n; ++v) {
            double sum = 0.0;
            for (const auto w : g.predecessors(v)) {
                sum += hub[w];
            }
            nextAuthority[v] = sum;
        }
        l2_normalize(nextAuthority);
        for (std::size_t v = 0; v < n; ++v) {
            double sum = 0.0;
            for (const auto w : g.successors(v)) {
                sum += nextAuthority[w];
            }
            nextHub[v] = sum;
        }
        l2_normalize(nextHub);

        const double authorityChange = l1_distance(nextAuthority, authority);
        const double hubChange = l1_distance(nextHub, hub);
        residual = std::max(authorityChange, hubChange);
        history.push_back(residual);
        authority.swap(nextAuthority);
        hub.swap(nextHub);
        if (authorityChange < cfg.tolerance && hubChange < cfg.tolerance) {
            HitsScores result{make_scores(g, std::move(authority)), make_scores(g, std::move(hub))};
            for (auto* s : {&result.authority, &result.hub}) {
                s->iterations = iter;
                s->residual = residual;
            }
            result.authority.residualHistory = std::move(history);
            return result;
        }
    }
    throw ConvergenceError("HITS did not converge after " + std::to_string(cfg.maxIterations) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           residual, cfg.maxIterations);
}

std::vector<int> positions_from_scores(std::span<const double> scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (const double s : scores) {
        if (std::isnan(s)) {
            throw Error(ErrorCode::invalid_score, "NaN score");
        }
    }
    // Index order equals NodeId order, so a stable sort gives the id tie-break.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    std::vector<int> positions(scores.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        positions[order[r]] = static_cast<int>(r + 1);
    }
    return positions;
}

RankingPositions scores_to_positions(const RankingScores& scores) {
    if (scores.values.empty()) {
        throw Error(ErrorCode::invalid_argument, "cannot rank an empty score vector");
    }
    if (!std::is_sorted(scores.nodes.begin(), scores.nodes.end())) {
        throw Error(ErrorCode::invalid_argument, "score vector nodes must be sorted");
    }
    for (std::size_t i = 0; i < scores.values.size(); ++i) {
        if (std::isnan(scores.values[i])) {
            throw Error(ErrorCode::invalid_score, "NaN score for '" + scores.nodes[i] + "'",
                        scores.nodes[i]);
        }
    }
    return {scores.nodes, positions_from_scores(scores.values)};
}

PositionRun rank_positions(const DirectedGraph& g, const RankingConfig& cfg) {
    switch (cfg.method) {
    case RankingMethod::pagerank: {
        const auto scores = pagerank(g, cfg);
        return {positions_from_scores(scores.values), scores.iterations};
    }
    case RankingMethod::hits: {
        const auto scores = hits(g, cfg);
        const auto& chosen =
            cfg.hitsScoreKind == HitsScoreKind::authority ? scores.authority : scores.hub;
        return {positions_from_scores(chosen.values), chosen.iterations};
    }
    }
    throw Error(ErrorCode::invalid_argument, "unknown ranking method", "method");
}

RankingPositions rank(const DirectedGraph& g, const RankingConfig& cfg) {
    RankingPositions result;
    result.positions = rank_positions(g, cfg).positions;
    result.nodes.assign(g.nodes().begin(), g.nodes().end());
    return result;
}

} // namespace rankaudit

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "rankaudit/error.hpp"
#include "rankaudit/ranking.hpp"
#include "support.hpp"

using namespace rankaudit;

namespace {

DirectedGraph make(std::vector<DirectedGraph::Edge> edges, std::map<NodeId, Label> labels = {}) {
    return DirectedGraph(std::move(labels), edges);
}

RankingConfig hits_config(HitsScoreKind kind = HitsScoreKind::authority) {
    RankingConfig cfg;
    cfg.method = RankingMethod::hits;
    cfg.hitsScoreKind = kind;
    return cfg;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::map<NodeId, int> as_map(const RankingPositions& p) {
    return oracle::positions_by_id(p);
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

} // namespace

TEST_CASE("pagerank closed forms") {
    const auto cycle3 = pagerank(make({{"a", "b"}, {"b", "c"}, {"c", "a"}}), {});
    for (double v : cycle3.values) CHECK(std::abs(v - 1.0 / 3.0) <= 1e-9);
    const auto cycle2 = pagerank(make({{"a", "b"}, {"b", "a"}}), {});
    for (double v : cycle2.values) CHECK(std::abs(v - 0.5) <= 1e-9);
}

TEST_CASE("pagerank on a chain matches the dense oracle") {
    // Dense Google-matrix iteration, 10^4 steps.
    const std::vector<double> expected{0.1844167819271554, 0.3411710465652375, 0.47441217150760734};
    const auto s = pagerank(make({{"a", "b"}, {"b", "c"}}), {});
    CHECK(max_abs_diff(s.values, expected) <= 1e-6);
    CHECK(s.score("c") > s.score("b"));
    CHECK(s.score("b") > s.score("a"));

    oracle::RawGraph raw;
    raw.ids = {"a", "b", "c"};
    raw.edges = {{"a", "b"}, {"b", "c"}};
    CHECK(max_abs_diff(oracle::dense_pagerank(raw, 0.85), expected) <= 1e-12);
}

TEST_CASE("pagerank conserves mass at every iteration") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto g = oracle::random_graph(seed, 1, 30, 0.15).build();
        const auto full = pagerank(g, {});
        // Stopping just above the k-th residual returns the k-th iterate.
        for (std::size_t k = 0; k < full.residualHistory.size(); ++k) {
            RankingConfig cfg;
            cfg.tolerance = std::nextafter(full.residualHistory[k], 1.0);
            const auto s = pagerank(g, cfg);
            CHECK(s.iterations <= static_cast<int>(k + 1));
            const double sum = std::accumulate(s.values.begin(), s.values.end(), 0.0);
            CHECK(std::abs(sum - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("pagerank residual is non-increasing after the first iteration") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto g = oracle::random_graph(seed, 1, 30, 0.15).build();
        const auto s = pagerank(g, {});
        REQUIRE(s.residualHistory.size() == static_cast<std::size_t>(s.iterations));
        for (std::size_t i = 2; i < s.residualHistory.size(); ++i) {
            CHECK(s.residualHistory[i] <= s.residualHistory[i - 1] * (1.0 + 1e-12) + 1e-18);
        }
        CHECK(s.residual < 1e-8);
    }
}

TEST_CASE("pagerank honours a custom teleportation vector") {
    oracle::RawGraph raw;
    raw.ids = {"a", "b", "c"};
    raw.edges = {{"a", "b"}, {"b", "c"}, {"c", "a"}};
    RankingConfig cfg;
    cfg.teleportation = {{"a", 0.5}, {"b", 0.25}, {"c", 0.25}};
    const auto s = pagerank(raw.build(), cfg);
    // a gets the extra restart mass and passes it down the cycle.
    CHECK(s.score("a") > s.score("b"));
    CHECK(s.score("b") > s.score("c"));
    CHECK(s.score("a") > 1.0 / 3.0);
    CHECK(std::abs(std::accumulate(s.values.begin(), s.values.end(), 0.0) - 1.0) <= 1e-9);

    // Restricted to a subgraph the remaining weights are renormalized.
    const auto sub = pagerank(remove_node(raw.build(), "a"), cfg);
    CHECK(std::abs(std::accumulate(sub.values.begin(), sub.values.end(), 0.0) - 1.0) <= 1e-9);

    RankingConfig bad;
    bad.teleportation = {{"a", -1.0}, {"b", 2.0}};
    CHECK_THROWS_AS(bad.validate(), Error);
    bad.teleportation = {{"a", 2.0}};
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("pagerank reports non-convergence with the residual") {
    RankingConfig cfg;
    cfg.maxIterations = 2;
    try {
        pagerank(make({{"a", "b"}, {"b", "c"}}), cfg);
        FAIL("expected non-convergence");
    } catch (const ConvergenceError& e) {
        CHECK(e.code() == ErrorCode::convergence);
        CHECK(e.residual() > 1e-8);
        CHECK(e.iterations() == 2);
    }
}

TEST_CASE("config validation") {
    RankingConfig cfg;
    cfg.damping = 1.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.damping = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.damping = 0.85;
    cfg.tolerance = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.tolerance = 1e-8;
    cfg.maxIterations = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    CHECK(parse_ranking_method("hits") == RankingMethod::hits);
    CHECK(parse_hits_score_kind("hub") == HitsScoreKind::hub);
    CHECK_THROWS_AS(parse_ranking_method("katz"), Error);
}

TEST_CASE("hits closed forms") {
    const auto bip = hits(make({{"h1", "a1"}, {"h1", "a2"}, {"h2", "a1"}, {"h2", "a2"}}), hits_config());
    // Node order: a1, a2, h1, h2.
    CHECK(max_abs_diff(bip.authority.values, {kInvSqrt2, kInvSqrt2, 0.0, 0.0}) <= 1e-9);
    CHECK(max_abs_diff(bip.hub.values, {0.0, 0.0, kInvSqrt2, kInvSqrt2}) <= 1e-9);

    const auto edge = hits(make({{"a", "b"}}), hits_config());
    CHECK(max_abs_diff(edge.authority.values, {0.0, 1.0}) <= 1e-12);
    CHECK(max_abs_diff(edge.hub.values, {1.0, 0.0}) <= 1e-12);
}

TEST_CASE("hits on the 4-node graph matches the eigen-iteration oracle") {
    // Power iteration on A^T A and A A^T, 10^4 steps.
    const std::vector<double> authority{1.0, 0.0, 0.0, 0.0};
    const std::vector<double> hub{0.0, 0.0, kInvSqrt2, kInvSqrt2};
    oracle::RawGraph raw;
    raw.ids = {"1", "2", "3", "4"};
    raw.edges = {{"1", "2"}, {"2", "3"}, {"3", "1"}, {"4", "1"}};
    const auto dense = oracle::dense_hits(raw);
    CHECK(max_abs_diff(dense.authority, authority) <= 1e-12);
    CHECK(max_abs_diff(dense.hub, hub) <= 1e-12);

    const auto s = hits(raw.build(), hits_config());
    CHECK(max_abs_diff(s.authority.values, authority) <= 1e-6);
    CHECK(max_abs_diff(s.hub.values, hub) <= 1e-6);
}

TEST_CASE("hits without edges is degenerate") {
    try {
        hits(make({}, {{"a", "X"}, {"b", "Y"}}), hits_config());
        FAIL("expected degenerate graph");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::degenerate_graph);
    }
}

TEST_CASE("scores to positions with tie-break by id") {
    const auto p = [](std::vector<NodeId> ids, std::vector<double> v) {
        RankingScores s;
        s.nodes = std::move(ids);
        s.values = std::move(v);
        return as_map(scores_to_positions(s));
    };
    CHECK(p({"a", "b", "c"}, {0.5, 0.3, 0.2}) == std::map<NodeId, int>{{"a", 1}, {"b", 2}, {"c", 3}});
    CHECK(p({"a", "b", "c"}, {0.4, 0.4, 0.2}) == std::map<NodeId, int>{{"a", 1}, {"b", 2}, {"c", 3}});
    CHECK(p({"z"}, {1.0}) == std::map<NodeId, int>{{"z", 1}});
    CHECK(p({"a", "b", "c"}, {0.1, 0.7, 0.7}) == std::map<NodeId, int>{{"a", 3}, {"b", 1}, {"c", 2}});

    RankingScores nan;
    nan.nodes = {"a", "b"};
    nan.values = {0.5, std::nan("")};
    try {
        scores_to_positions(nan);
        FAIL("expected invalid score");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_score);
    }
}

TEST_CASE("rank examples") {
    CHECK(as_map(rank(make({{"a", "b"}, {"b", "c"}, {"c", "a"}}), {})) ==
          std::map<NodeId, int>{{"a", 1}, {"b", 2}, {"c", 3}});
    CHECK(as_map(rank(make({{"a", "b"}}), hits_config())) == std::map<NodeId, int>{{"a", 2}, {"b", 1}});
    CHECK(as_map(rank(make({{"a", "b"}, {"b", "c"}}), {})) ==
          std::map<NodeId, int>{{"a", 3}, {"b", 2}, {"c", 1}});
}

TEST_CASE("positions are a bijection onto 1..n") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto g = oracle::random_graph(seed, 5, 30, 0.15).build();
        for (const auto method : {RankingMethod::pagerank, RankingMethod::hits}) {
            RankingConfig cfg;
            cfg.method = method;
            auto p = rank(g, cfg).positions;
            std::sort(p.begin(), p.end());
            for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == static_cast<int>(i + 1));
        }
    }
}

TEST_CASE("order-preserving relabeling permutes positions identically") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto raw = oracle::random_graph(seed, 5, 30, 0.15);
        // "v12" -> "node-v12": prefixing preserves lexicographic order.
        oracle::RawGraph renamed;
        const auto rename = [](const NodeId& id) { return "node-" + id; };
        for (const auto& id : raw.ids) renamed.ids.push_back(rename(id));
        for (const auto& [s, t] : raw.edges) renamed.edges.emplace_back(rename(s), rename(t));
        for (const auto& [id, label] : raw.labels) renamed.labels.emplace(rename(id), label);
        for (const auto method : {RankingMethod::pagerank, RankingMethod::hits}) {
            RankingConfig cfg;
            cfg.method = method;
            const auto a = rank(raw.build(), cfg);
            const auto b = rank(renamed.build(), cfg);
            for (const auto& id : raw.ids) {
                CHECK(a.position(id) == b.position(rename(id)));
            }
        }
    }
}

TEST_CASE("random graphs match the dense oracles") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const auto raw = oracle::random_graph(seed, 10, 30, 0.15);
        const auto g = raw.build();
        CHECK(max_abs_diff(pagerank(g, {}).values, oracle::dense_pagerank(raw, 0.85)) <= 1e-6);
        const auto h = hits(g, hits_config());
        const auto d = oracle::dense_hits(raw);
        CHECK(max_abs_diff(h.authority.values, d.authority) <= 1e-6);
        CHECK(max_abs_diff(h.hub.values, d.hub) <= 1e-6);
    }
}

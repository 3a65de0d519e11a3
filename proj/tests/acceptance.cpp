// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance              run every criterion
//   acceptance <name>...    run the named criteria
//
// Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "rankaudit/audit_store.hpp"
#include "rankaudit/cli.hpp"
#include "rankaudit/constraints.hpp"
#include "rankaudit/diagnosis.hpp"
#include "rankaudit/error.hpp"
#include "rankaudit/json_io.hpp"
#include "rankaudit/service.hpp"
#include "support.hpp"

using namespace rankaudit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failed checks; the first few are reported in the summary line.
struct Outcome {
    std::vector<std::string> failures;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    bool passed() const { return failures.empty(); }
};

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double l2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(3) << x;
    return s.str();
}

RankingConfig config(RankingMethod method) {
    RankingConfig cfg;
    cfg.method = method;
    return cfg;
}

Outcome ranking_oracle() {
    Outcome o;
    double worstPr = 0.0;
    double worstHits = 0.0;
    double worstSum = 0.0;
    double worstNorm = 0.0;
    double libSeconds = 0.0;
    const auto start = Clock::now();
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto raw = oracle::random_graph(seed, 10, 30, 0.15);
        const auto g = raw.build();
        const auto t0 = Clock::now();
        const auto pr = pagerank(g, config(RankingMethod::pagerank));
        const auto h = hits(g, config(RankingMethod::hits));
        libSeconds += seconds_since(t0);

        worstPr = std::max(worstPr, max_abs_diff(pr.values, oracle::dense_pagerank(raw, 0.85)));
        const auto dh = oracle::dense_hits(raw);
        worstHits = std::max({worstHits, max_abs_diff(h.authority.values, dh.authority),
                              max_abs_diff(h.hub.values, dh.hub)});
        worstSum = std::max(worstSum, std::abs(std::accumulate(pr.values.begin(), pr.values.end(), 0.0) - 1.0));
        worstNorm = std::max({worstNorm, std::abs(l2(h.authority.values) - 1.0), std::abs(l2(h.hub.values) - 1.0)});
    }
    const double total = seconds_since(start);
    o.expect(worstPr <= 1e-6, "PageRank L-inf " + fmt(worstPr));
    o.expect(worstHits <= 1e-6, "HITS L-inf " + fmt(worstHits));
    o.expect(worstSum <= 1e-9, "PageRank sum error " + fmt(worstSum));
    o.expect(worstNorm <= 1e-9, "HITS norm error " + fmt(worstNorm));
    o.expect(total < 5.0, "runtime " + fmt(total) + " s");
    o.detail = "50 graphs; max L-inf PR " + fmt(worstPr) + ", HITS " + fmt(worstHits) + "; sum err " +
               fmt(worstSum) + "; norm err " + fmt(worstNorm) + "; " + fmt(libSeconds) + " s ranking, " +
               fmt(total) + " s with oracles";
    return o;
}

Outcome closed_forms() {
    Outcome o;
    const auto make = [](std::vector<DirectedGraph::Edge> e) { return DirectedGraph({}, e); };
    const auto c3 = pagerank(make({{"a", "b"}, {"b", "c"}, {"c", "a"}}), {});
    o.expect(max_abs_diff(c3.values, {1.0 / 3, 1.0 / 3, 1.0 / 3}) <= 1e-9, "3-cycle PageRank");
    const auto c2 = pagerank(make({{"a", "b"}, {"b", "a"}}), {});
    o.expect(max_abs_diff(c2.values, {0.5, 0.5}) <= 1e-9, "2-cycle PageRank");
    const auto bip = hits(make({{"h1", "a1"}, {"h1", "a2"}, {"h2", "a1"}, {"h2", "a2"}}), config(RankingMethod::hits));
    const double r = 1.0 / std::sqrt(2.0);
    o.expect(max_abs_diff(bip.authority.values, {r, r, 0.0, 0.0}) <= 1e-9, "bipartite authority");
    o.expect(max_abs_diff(bip.hub.values, {0.0, 0.0, r, r}) <= 1e-9, "bipartite hub");
    o.detail = "3-cycle, 2-cycle, complete bipartite 2x2";
    return o;
}

void check_identities(Outcome& o, const SensitivityTable& t, BaselineMode mode, std::size_t n, const std::string& tag) {
    for (const auto& r : t.records) {
        std::int64_t pos = 0;
        std::int64_t neg = 0;
        for (const auto& [b, v] : r.perLabelPos) pos += v;
        for (const auto& [b, v] : r.perLabelNeg) neg += v;
        o.expect(r.si == r.siPos + r.siNeg, tag + " si split at " + r.node);
        o.expect(pos == r.siPos && neg == r.siNeg, tag + " label sums at " + r.node);
        if (mode == BaselineMode::compact) {
            o.expect(r.siPos == r.siNeg, tag + " compact balance at " + r.node);
        } else {
            o.expect(r.siPos - r.siNeg == static_cast<std::int64_t>(n) - r.originalRank, tag + " gap offset at " + r.node);
        }
    }
}

Outcome sweep_equivalence() {
    Outcome o;
    const auto start = Clock::now();
    std::size_t records = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto raw = oracle::random_graph(1000 + seed, 8, 30, 0.15);
        const auto g = raw.build();
        for (const auto method : {RankingMethod::pagerank, RankingMethod::hits}) {
            for (const auto mode : {BaselineMode::compact, BaselineMode::gap}) {
                const auto tag = "seed " + std::to_string(seed) + " " + std::string(to_string(method)) + "/" +
                                 std::string(to_string(mode));
                try {
                    const auto table = sensitivity_initial_check(g, config(method), mode);
                    const auto naive = oracle::naive_sensitivity(raw, config(method), mode);
                    o.expect(table.records.size() == naive.size(), tag + " size");
                    for (std::size_t i = 0; i < std::min(naive.size(), table.records.size()); ++i) {
                        o.expect(oracle::same_record(naive[i], table.records[i]), tag + " record " + naive[i].node);
                    }
                    records += naive.size();
                } catch (const Error& e) {
                    o.expect(false, tag + ": " + e.what());
                }
            }
        }
    }
    const double total = seconds_since(start);
    o.expect(total < 30.0, "runtime " + fmt(total) + " s");
    o.detail = "20 graphs x 2 methods x 2 modes, " + std::to_string(records) + " records equal; " + fmt(total) + " s";
    return o;
}

Outcome decomposition_identities() {
    Outcome o;
    std::size_t tables = 0;
    const auto run = [&](const DirectedGraph& g, const std::string& name) {
        for (const auto method : {RankingMethod::pagerank, RankingMethod::hits}) {
            for (const auto mode : {BaselineMode::compact, BaselineMode::gap}) {
                const auto t = run_audit(g, config(method), mode, 2).table;
                check_identities(o, t, mode, g.node_count(), name);
                ++tables;
            }
        }
    };
    run(testing_support::toy_graph(), "toy");
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        run(oracle::random_graph(1000 + seed, 8, 30, 0.15).build(), "seed " + std::to_string(seed));
    }
    o.detail = std::to_string(tables) + " tables checked";
    return o;
}

Outcome influence_equivalence() {
    Outcome o;
    std::mt19937_64 rng(99);
    std::size_t influenced = 0;
    std::size_t infNodes = 0;
    for (std::uint64_t pair = 1; pair <= 20; ++pair) {
        const auto raw = oracle::random_graph(2000 + pair, 8, 30, 0.15);
        const auto g = raw.build();
        const auto ids = raw.sorted_ids();
        const auto v = ids[rng() % ids.size()];
        const auto mode = pair % 2 == 0 ? BaselineMode::gap : BaselineMode::compact;
        const auto d = ranking_deltas(g, {}, mode, v);
        const auto ig = build_influence_graph(g, d);
        const auto overview = overview_stats(d, g);
        const auto tag = "pair " + std::to_string(pair);

        std::set<NodeId> inf;
        for (const auto& e : d.entries) {
            if (e.delta != 0) inf.insert(e.node);
        }
        o.expect(ig.nodes.size() - 1 == overview.influencedCount, tag + " totality");
        for (const auto& [node, hop] : oracle::filtered_hops(raw, v, inf)) {
            const auto* n = ig.find(node);
            o.expect(n != nullptr && n->hop == (hop == oracle::kUnreached ? kHopInf : hop), tag + " hop of " + node);
            infNodes += hop == oracle::kUnreached ? 1 : 0;
        }
        for (const auto& e : ig.edges) {
            const auto* s = ig.find(e.source);
            const auto* t = ig.find(e.target);
            if (e.kind == InfluenceEdgeKind::traversal) {
                o.expect(s && t && t->hop > s->hop, tag + " backward edge " + e.source + "->" + e.target);
            } else {
                o.expect(e.source == v && t && t->hop == kHopInf, tag + " inf edge");
            }
        }
        influenced += inf.size();
    }
    o.detail = "20 removals, " + std::to_string(influenced) + " influenced nodes (" + std::to_string(infNodes) +
               " unreachable) matched";
    return o;
}

struct RuleDraw {
    ConstraintRule rule;
    oracle::NaiveRule naive;
};

RuleDraw draw_rule(std::mt19937_64& rng, const std::vector<NodeId>& ids, int index) {
    std::set<NodeId> prot;
    const auto count = 1 + rng() % 3;
    while (prot.size() < std::min<std::size_t>(count, ids.size())) prot.insert(ids[rng() % ids.size()]);
    const bool noDecrease = rng() % 2 == 0;
    const bool percent = rng() % 3 == 0;
    const double threshold = percent ? static_cast<double>(rng() % 30) : static_cast<double>(rng() % 3);
    ConstraintRule rule{"r" + std::to_string(index), prot,
                        noDecrease ? RuleDirection::no_decrease : RuleDirection::no_increase, threshold,
                        percent ? ThresholdKind::percent_of_n : ThresholdKind::absolute_positions};
    return {rule, {prot, noDecrease, threshold, percent}};
}

void check_rules_on(Outcome& o, const oracle::RawGraph& raw, std::mt19937_64& rng, const std::string& tag,
                    std::size_t& checks) {
    const auto g = raw.build();
    const auto run = run_audit(g, {}, BaselineMode::compact);
    const DeltaLookup lookup = [&](const NodeId& node) -> const DeltaVector* {
        for (const auto& d : run.deltas) {
            if (d.removed == node) return &d;
        }
        return nullptr;
    };
    const auto ids = raw.sorted_ids();
    std::map<NodeId, std::map<NodeId, int>> naive;
    for (const auto& v : ids) naive[v] = oracle::naive_deltas(raw, {}, BaselineMode::compact, v);

    std::vector<ConstraintRule> rules;
    std::vector<oracle::NaiveRule> naiveRules;
    std::set<NodeId> previous(ids.begin(), ids.end());
    for (int i = 0; i < 20; ++i) {
        auto [rule, nr] = draw_rule(rng, ids, i);
        rules.push_back(rule);
        naiveRules.push_back(nr);
        std::set<NodeId> kept;
        for (const auto& r : filter_table(run.table, RuleSet(rules), lookup).records) kept.insert(r.node);
        std::set<NodeId> expected;
        for (const auto& v : ids) {
            bool ok = true;
            for (const auto& n : naiveRules) ok = ok && !oracle::naive_violates(n, v, naive[v]);
            if (ok) expected.insert(v);
        }
        o.expect(kept == expected, tag + " draw " + std::to_string(i) + " retained set");
        o.expect(std::includes(previous.begin(), previous.end(), kept.begin(), kept.end()),
                 tag + " draw " + std::to_string(i) + " grew");
        previous = kept;
        ++checks;
    }
}

Outcome constraint_filtering() {
    Outcome o;
    std::mt19937_64 rng(7);
    std::size_t checks = 0;
    check_rules_on(o, testing_support::toy_raw(), rng, "toy", checks);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        check_rules_on(o, oracle::random_graph(3000 + seed, 5, 20, 0.15), rng, "seed " + std::to_string(seed), checks);
    }
    o.detail = std::to_string(checks) + " cumulative rule sets on 11 graphs matched the brute-force scan";
    return o;
}

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "rankaudit");
    std::ostringstream out;
    std::ostringstream err;
    return run_cli(args, out, err);
}

Outcome determinism_persistence() {
    Outcome o;
    const auto dir = testing_support::scratch_dir("acceptance-determinism");
    const auto raw = oracle::random_graph(4242, 30, 30, 0.15);
    {
        std::ofstream edges(dir / "g.csv");
        for (const auto& [s, t] : raw.edges) edges << s << "," << t << "\n";
        std::ofstream labels(dir / "l.csv");
        for (const auto& [id, label] : raw.labels) labels << id << "," << label << "\n";
    }
    const auto graph = (dir / "g.csv").string();
    const auto labels = (dir / "l.csv").string();
    for (const std::string method : {"pagerank", "hits"}) {
        for (const std::string mode : {"compact", "gap"}) {
            const auto one = dir / (method + mode + "-1.json");
            const auto eight = dir / (method + mode + "-8.json");
            o.expect(cli({"precompute", "--graph", graph, "--labels", labels, "--method", method, "--baseline", mode,
                          "--threads", "1", "--out", one.string()}) == kExitOk, "precompute 1 thread");
            o.expect(cli({"precompute", "--graph", graph, "--labels", labels, "--method", method, "--baseline", mode,
                          "--threads", "8", "--out", eight.string()}) == kExitOk, "precompute 8 threads");
            const auto bytes = read_file_bytes(one);
            o.expect(bytes == read_file_bytes(eight), method + "/" + mode + " 1 vs 8 threads differ");

            const auto cache = load_cache(one);
            o.expect(serialize_cache(cache) == bytes, method + "/" + mode + " write(read(file)) != file");
            o.expect(parse_cache(serialize_cache(cache)) == cache, method + "/" + mode + " read(write(c)) != c");
        }
    }

    const auto cache = load_cache(dir / "pagerankcompact-1.json");
    auto edited = raw;
    edited.edges.pop_back();
    try {
        verify_cache_matches(cache, edited.build());
        o.expect(false, "edited graph accepted");
    } catch (const Error& e) {
        o.expect(e.code() == ErrorCode::fingerprint_mismatch, "wrong error for edited graph");
    }
    auto bytes = serialize_cache(cache);
    const auto at = bytes.find("\"si\":");
    bytes[at + 5] = bytes[at + 5] == '9' ? '8' : static_cast<char>(bytes[at + 5] + 1);
    try {
        parse_cache(bytes);
        o.expect(false, "flipped byte accepted");
    } catch (const Error& e) {
        o.expect(e.code() == ErrorCode::corrupt_cache, "wrong error for flipped byte");
    }
    o.detail = "8 caches byte-identical across 1/8 threads; round trip exact; stale graph and edited bytes rejected";
    return o;
}

Outcome performance() {
    Outcome o;
    const auto g = oracle::random_graph_with_edges(500, 500, 7000).build();
    RankingConfig cfg;
    cfg.tolerance = 1e-8;

    auto start = Clock::now();
    const auto single = run_audit(g, cfg, BaselineMode::compact, 1);
    const double t1 = seconds_since(start);
    start = Clock::now();
    const auto parallel = run_audit(g, cfg, BaselineMode::compact, 4);
    const double t4 = seconds_since(start);

    const auto a = serialize_cache(make_cache(g, cfg, BaselineMode::compact, single));
    const auto b = serialize_cache(make_cache(g, cfg, BaselineMode::compact, parallel));
    const double speedup = t1 / t4;
    o.expect(t1 < 120.0, "single-threaded " + fmt(t1) + " s");
    o.expect(speedup >= 2.0, "speedup " + fmt(speedup) + "x at 4 threads with " +
                                 std::to_string(std::thread::hardware_concurrency()) + " hardware thread(s)");
    o.expect(a == b, "4-thread cache differs");
    o.detail = "500 nodes / 7000 edges: 1 thread " + fmt(t1) + " s, 4 threads " + fmt(t4) + " s (" + fmt(speedup) +
               "x, " + std::to_string(std::thread::hardware_concurrency()) + " hardware thread(s)); mean " +
               fmt(single.iterations.mean) + " iterations per ranking";
    return o;
}

// The contract checks shared by every fixture the service is run against.
void check_service(Outcome& o, AuditService& s, const std::string& tag, const std::vector<NodeId>& probeNodes) {
    const auto& g = s.graph();
    const auto& c = s.cache();
    const auto get = [&](const std::string& path, const QueryParams& q = {}) {
        const auto a = s.handle("GET", path, q);
        const auto b = s.handle("GET", path, q);
        o.expect(a.body == b.body && a.status == b.status, tag + " repeated GET " + path + " differs");
        return a;
    };

    o.expect(get("/api/health").body == "ok", tag + " health");
    o.expect(get("/api/summary").body == to_json(summarize(g)).dump(), tag + " summary");

    std::vector<std::string> sorts{"rank", "si", "siPos", "siNeg"};
    for (const auto& b : g.label_universe()) {
        sorts.push_back("perLabel:" + b);
        sorts.push_back("perLabelPos:" + b);
        sorts.push_back("perLabelNeg:" + b);
    }
    for (const auto& sort : sorts) {
        const auto page = Json::parse(get("/api/sensitivity", {{"sort", sort}}).body);
        std::set<std::string> seen;
        for (const auto& rec : page["records"]) {
            const auto* expected = c.table.find(rec["node"].get<std::string>());
            o.expect(expected && rec == to_json(*expected), tag + " sensitivity record (" + sort + ")");
            seen.insert(rec["node"].get<std::string>());
        }
        o.expect(seen.size() == c.table.records.size(), tag + " sensitivity coverage (" + sort + ")");
    }
    const auto limited = Json::parse(get("/api/sensitivity", {{"sort", "si"}, {"order", "desc"}, {"limit", "20"}}).body);
    auto bySi = c.table.records;
    std::stable_sort(bySi.begin(), bySi.end(), [](const auto& x, const auto& y) {
        return x.si != y.si ? x.si > y.si : x.node < y.node;
    });
    for (std::size_t i = 0; i < limited["records"].size(); ++i) {
        o.expect(limited["records"][i] == to_json(bySi[i]), tag + " si-desc order at " + std::to_string(i));
    }
    o.expect(limited["records"].size() == std::min<std::size_t>(20, bySi.size()), tag + " limit 20");

    const auto n = g.node_count();
    for (const auto& v : probeNodes) {
        const auto* d = c.find_deltas(v);
        const auto k = std::min<std::size_t>(100, n - 1);
        const auto report = diagnose(g, c.originalPositions, c.mode, *d, k, c.table.fingerprint);
        o.expect(get("/api/perturbation/" + v).body == to_json(report).dump(), tag + " perturbation " + v);
        o.expect(get("/api/perturbation/" + v, {{"k", "1"}}).body ==
                     to_json(diagnose(g, c.originalPositions, c.mode, *d, 1, c.table.fingerprint)).dump(),
                 tag + " perturbation k=1 " + v);
        const auto ig = build_influence_graph(g, *d);
        o.expect(get("/api/perturbation/" + v + "/influence").body == to_json(ig).dump(), tag + " influence " + v);
        o.expect(get("/api/perturbation/" + v + "/influence", {{"hopMin", "1"}, {"hopMax", "1"}}).body ==
                     to_json(filter_influence(ig, 1, 1, InfluenceDirection::all)).dump(),
                 tag + " influence [1,1] " + v);
        o.expect(get("/api/perturbation/" + v + "/influence", {{"hopMin", "2"}, {"direction", "decreased"}}).body ==
                     to_json(filter_influence(ig, 2, kHopInf, InfluenceDirection::decreased)).dump(),
                 tag + " influence [2,inf] decreased " + v);
    }

    // Two sessions mutating rules concurrently never see each other's rules.
    const auto session = [&] { return Json::parse(s.handle("POST", "/api/session", {}).body)["session_id"].get<std::string>(); };
    const auto a = session();
    const auto b = session();
    const auto ids = std::vector<NodeId>(g.nodes().begin(), g.nodes().end());
    ConstraintRule strictRule{"strict", {ids.begin(), ids.end()}, RuleDirection::no_decrease, 0.0,
                              ThresholdKind::absolute_positions};
    const RuleSet strict({strictRule});
    const auto lookup = [&](const NodeId& node) { return c.find_deltas(node); };
    const auto strictCount = filter_table(c.table, strict, lookup).records.size();
    const auto strictBody = Json(Json::array({to_json(strictRule)})).dump();
    std::atomic<int> leaks{0};
    std::thread ta([&] {
        for (int i = 0; i < 100; ++i) {
            s.handle("POST", "/api/session/" + a + "/rules", {}, strictBody);
            const auto r = Json::parse(s.handle("GET", "/api/sensitivity", {{"sessionId", a}}).body);
            if (r["total"] != strictCount) ++leaks;
        }
    });
    std::thread tb([&] {
        for (int i = 0; i < 100; ++i) {
            s.handle("POST", "/api/session/" + b + "/rules", {}, "[]");
            const auto r = s.handle("GET", "/api/sensitivity", {{"sessionId", b}});
            if (r.body != s.handle("GET", "/api/sensitivity", {}).body) ++leaks;
        }
    });
    ta.join();
    tb.join();
    o.expect(leaks == 0, tag + " session isolation (" + std::to_string(leaks.load()) + " leaks)");
    o.expect(s.handle("DELETE", "/api/session/" + a, {}).status == 200, tag + " delete session");
}

Outcome service_contract() {
    Outcome o;
    {
        AuditService s(load_cache(testing_support::fixture("toy_cache.json")), testing_support::toy_graph());
        const auto g = testing_support::toy_graph();
        check_service(o, s, "golden", std::vector<NodeId>(g.nodes().begin(), g.nodes().end()));
    }
    {
        // A larger social-network-like fixture with numeric ids.
        const auto raw = oracle::random_graph_with_edges(136, 200, 1200);
        oracle::RawGraph numeric;
        for (const auto& id : raw.ids) numeric.ids.push_back(id.substr(1));
        for (const auto& [x, y] : raw.edges) numeric.edges.emplace_back(x.substr(1), y.substr(1));
        for (const auto& [id, label] : raw.labels) numeric.labels.emplace(id.substr(1), label);
        const auto g = numeric.build();
        AuditService s(make_cache(g, {}, BaselineMode::compact, run_audit(g, {}, BaselineMode::compact, 4)), g);
        check_service(o, s, "200-node", {"136", "0", "99"});
    }
    o.detail = "golden toy fixture and a 200-node fixture; every endpoint equals the library serialization";
    return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"ranking_oracle", ranking_oracle},
    {"closed_forms", closed_forms},
    {"sweep_equivalence", sweep_equivalence},
    {"decomposition_identities", decomposition_identities},
    {"influence_equivalence", influence_equivalence},
    {"constraint_filtering", constraint_filtering},
    {"determinism_persistence", determinism_persistence},
    {"performance", performance},
    {"service_contract", service_contract},
};

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> wanted(argv + 1, argv + argc);
    int failed = 0;
    for (const auto& name : wanted) {
        const bool known = std::any_of(kCriteria.begin(), kCriteria.end(), [&](const auto& c) { return c.first == name; });
        if (!known) {
            std::cout << "FAIL " << name << ": unknown criterion\n";
            ++failed;
        }
    }
    for (const auto& [name, run] : kCriteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        std::cout << (o.passed() ? "PASS " : "FAIL ") << name << ": " << o.detail;
        if (!o.passed()) {
            std::cout << " | " << o.failures.size() << " failed check(s):";
            for (std::size_t i = 0; i < std::min<std::size_t>(5, o.failures.size()); ++i) {
                std::cout << " [" << o.failures[i] << "]";
            }
            ++failed;
        }
        std::cout << std::endl;
    }
    return failed == 0 ? 0 : 1;
}

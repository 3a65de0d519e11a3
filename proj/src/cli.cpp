#include "rankaudit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "rankaudit/audit_store.hpp"
#include "rankaudit/diagnosis.hpp"
#include "rankaudit/error.hpp"
#include "rankaudit/json_io.hpp"
#include "rankaudit/service.hpp"

namespace rankaudit {

namespace {

struct GraphArgs {
    std::string graphPath;
    std::string labelPath;
    bool header = false;

    void attach(CLI::App& cmd) {
        cmd.add_option("--graph", graphPath, "Edge list (source,target per line)")->required();
        cmd.add_option("--labels", labelPath, "Label list (node,label per line)");
        cmd.add_flag("--header", header, "Skip the first row of each input file");
    }

    ParseResult load(std::ostream& err) const {
        const auto edges = read_file_bytes(graphPath);
        const auto labels = labelPath.empty() ? std::string{} : read_file_bytes(labelPath);
        auto parsed = parse_graph(edges, labels, {header});
        if (parsed.droppedSelfLoops > 0 || parsed.droppedDuplicates > 0) {
            err << "dropped " << parsed.droppedSelfLoops << " self-loop(s) and "
                << parsed.droppedDuplicates << " duplicate edge(s)\n";
        }
        return parsed;
    }
};

struct PrecomputeArgs {
    GraphArgs graph;
    std::string method = "pagerank";
    double damping = 0.85;
    double tolerance = 1e-8;
    int maxIterations = 1000;
    std::string hitsScore = "authority";
    std::string baseline = "compact";
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
};

struct ReportArgs {
    GraphArgs graph;
    std::string cachePath;
    std::string node;
    std::string format = "json";
    std::optional<std::size_t> k;
    std::string out = "-";
};

struct ServeArgs {
    GraphArgs graph;
    std::string cachePath;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string staticDir;
    long sessionTimeout = 3600;
};

void write_output(const std::string& target, const std::string& bytes, std::ostream& out) {
    if (target == "-") {
        out << bytes;
        out.flush();
        return;
    }
    std::ofstream file(target, std::ios::binary | std::ios::trunc);
    if (!file || !file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
        throw Error(ErrorCode::io_error, "cannot write " + target, target);
    }
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        row[j] = j;
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diagonal = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const auto above = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] != b[j - 1] ? 1 : 0)});
            diagonal = above;
        }
    }
    return row[b.size()];
}

std::vector<NodeId> closest_nodes(const DirectedGraph& g, const std::string& wanted, std::size_t count) {
    std::vector<std::pair<std::size_t, NodeId>> scored;
    for (const auto& id : g.nodes()) {
        scored.emplace_back(edit_distance(wanted, id), id);
    }
    std::sort(scored.begin(), scored.end());
    std::vector<NodeId> result;
    for (std::size_t i = 0; i < std::min(count, scored.size()); ++i) {
        result.push_back(scored[i].second);
    }
    return result;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n\r") == std::string::npos) {
        return value;
    }
    std::string quoted = "\"";
    for (const char c : value) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    return quoted + "\"";
}

int precompute(const PrecomputeArgs& args, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    const auto parsed = args.graph.load(err);
    const auto& g = parsed.graph;

    RankingConfig cfg;
    cfg.method = parse_ranking_method(args.method);
    cfg.damping = args.damping;
    cfg.tolerance = args.tolerance;
    cfg.maxIterations = args.maxIterations;
    cfg.hitsScoreKind = parse_hits_score_kind(args.hitsScore);
    const auto mode = parse_baseline_mode(args.baseline);
    cfg.validate();

    auto run = run_audit(g, cfg, mode, args.threads);
    const auto stats = run.iterations;
    const auto cache = make_cache(g, cfg, mode, std::move(run));
    if (args.out == "-") {
        write_cache(cache, out);
    } else {
        save_cache(cache, args.out);
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    err << "precomputed " << g.node_count() << " nodes, " << g.edge_count() << " edges ("
        << to_string(cfg.method) << ", " << to_string(mode) << ", " << args.threads
        << " thread(s)) in " << std::fixed << std::setprecision(3) << elapsed.count() << " s; "
        << "iterations per ranking min " << stats.min << " mean " << std::setprecision(1)
        << stats.mean << " max " << stats.max << "; wrote "
        << (args.out == "-" ? std::string("stdout") : args.out) << "\n";
    return kExitOk;
}

int report(const ReportArgs& args, std::ostream& out, std::ostream& err) {
    const auto cache = load_cache(args.cachePath);
    const auto parsed = args.graph.load(err);
    const auto& g = parsed.graph;
    verify_cache_matches(cache, g);

    const auto* d = cache.find_deltas(args.node);
    if (d == nullptr) {
        err << "error: unknown node '" << args.node << "'";
        const auto candidates = closest_nodes(g, args.node, 5);
        if (!candidates.empty()) {
            err << "; did you mean:";
            for (const auto& c : candidates) {
                err << " " << c;
            }
        }
        err << "\n";
        return kExitDataError;
    }

    const auto k = args.k.value_or(std::min<std::size_t>(100, g.node_count() - 1));
    const auto result = diagnose(g, cache.originalPositions, cache.mode, *d, k, cache.table.fingerprint);
    if (args.format == "json") {
        write_output(args.out, to_json(result).dump(2) + "\n", out);
    } else {
        std::string csv = "node,previous_rank,perturbed_rank,delta,label\n";
        for (const auto& c : result.changes) {
            csv += csv_field(c.node) + "," + std::to_string(c.previousRank) + "," +
                   std::to_string(c.perturbedRank) + "," + std::to_string(c.delta) + "," +
                   csv_field(c.label) + "\n";
        }
        write_output(args.out, csv, out);
    }
    return kExitOk;
}

int serve(const ServeArgs& args, std::ostream& err) {
    auto cache = load_cache(args.cachePath);
    auto parsed = args.graph.load(err);
    ServiceOptions options;
    options.staticDir = args.staticDir;
    options.sessionIdleTimeout = std::chrono::seconds(args.sessionTimeout);
    AuditService service(std::move(cache), std::move(parsed.graph), options);
    HttpServer server(service);
    const int port = server.bind(args.host, args.port);
    err << "serving audit " << service.cache().fingerprint.substr(0, 12) << " on http://"
        << args.host << ":" << port << "\n";
    err.flush();
    server.listen();
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sensitivity auditing of graph ranking methods under node removal", "rankaudit"};
    app.require_subcommand(1);

    PrecomputeArgs pre;
    auto* preCmd = app.add_subcommand("precompute", "Run the full node-removal sweep and write the audit cache");
    pre.graph.attach(*preCmd);
    preCmd->add_option("--method", pre.method, "Ranking method")
        ->check(CLI::IsMember({"pagerank", "hits"}))
        ->capture_default_str();
    preCmd->add_option("--damping", pre.damping, "PageRank damping factor")->capture_default_str();
    preCmd->add_option("--tolerance", pre.tolerance, "L1 convergence tolerance")->capture_default_str();
    preCmd->add_option("--max-iterations", pre.maxIterations, "Iteration cap")->capture_default_str();
    preCmd->add_option("--hits-score", pre.hitsScore, "HITS vector used for ranking")
        ->check(CLI::IsMember({"authority", "hub"}))
        ->capture_default_str();
    preCmd->add_option("--baseline", pre.baseline, "Rank alignment mode")
        ->check(CLI::IsMember({"compact", "gap"}))
        ->capture_default_str();
    preCmd->add_option("--threads", pre.threads, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    preCmd->add_option("--out", pre.out, "Cache file ('-' for stdout, '.gz' to compress)")->required();

    ReportArgs rep;
    auto* repCmd = app.add_subcommand("report", "Diagnose one node removal from the audit cache");
    rep.graph.attach(*repCmd);
    repCmd->add_option("--cache", rep.cachePath, "Audit cache")->required();
    repCmd->add_option("--node", rep.node, "Removed node")->required();
    repCmd->add_option("--format", rep.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    repCmd->add_option("--k", rep.k, "Top-k cut for label proportions (default min(100, n-1))")
        ->check(CLI::PositiveNumber);
    repCmd->add_option("--out", rep.out, "Output file ('-' for stdout)")->capture_default_str();

    ServeArgs srv;
    if (const char* env = std::getenv(kPortEnvVar)) {
        try {
            srv.port = std::stoi(env);
        } catch (const std::exception&) {
            err << "ignoring invalid " << kPortEnvVar << "='" << env << "'\n";
        }
    }
    auto* srvCmd = app.add_subcommand("serve", "Serve the audit over HTTP/JSON");
    srv.graph.attach(*srvCmd);
    srvCmd->add_option("--cache", srv.cachePath, "Audit cache")->required();
    srvCmd->add_option("--host", srv.host, "Bind address")->capture_default_str();
    srvCmd->add_option("--port", srv.port, std::string("Port (default from ") + kPortEnvVar + ")")
        ->check(CLI::Range(0, 65535))
        ->capture_default_str();
    srvCmd->add_option("--static-dir", srv.staticDir, "Built UI assets served at /")
        ->check(CLI::ExistingDirectory);
    srvCmd->add_option("--session-timeout", srv.sessionTimeout, "Idle session expiry in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (preCmd->parsed()) {
            return precompute(pre, out, err);
        }
        if (repCmd->parsed()) {
            return report(rep, out, err);
        }
        return serve(srv, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    }
}

} // namespace rankaudit

#include "rankaudit/sensitivity.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>

#include "rankaudit/digest.hpp"
#include "rankaudit/error.hpp"
#include "rankaudit/parallel.hpp"

namespace rankaudit {

namespace {

std::string format_double(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, end);
}

[[noreturn]] void rethrow_annotated(const Error& e, const std::string& context) {
    const std::string message = context + ": " + e.what();
    if (const auto* ce = dynamic_cast<const ConvergenceError*>(&e)) {
        throw ConvergenceError(message, ce->residual(), ce->iterations());
    }
    throw Error(e.code(), message, e.subject());
}

struct DeltaRun {
    DeltaVector deltas;
    int iterations = 0;
};

DeltaRun compute_deltas(const DirectedGraph& g, const RankingPositions& original,
                        const RankingConfig& cfg, BaselineMode mode, const NodeId& v) {
    const auto n = g.node_count();
    if (n < 2) {
        throw Error(ErrorCode::invalid_argument, "node removal needs a graph with >= 2 nodes");
    }
    if (original.size() != n) {
        throw Error(ErrorCode::invalid_argument, "original ranking does not match the graph");
    }
    const auto removed = g.index_of(v);
    const int removedPosition = original.positions[removed];

    PositionRun after;
    try {
        after = rank_positions(remove_node(g, v), cfg);
    } catch (const Error& e) {
        rethrow_annotated(e, "ranking the graph without '" + v + "'");
    }

    DeltaRun run;
    run.iterations = after.iterations;
    run.deltas.removed = v;
    run.deltas.entries.reserve(n - 1);
    for (std::size_t i = 0, j = 0; i < n; ++i) {
        if (i == removed) {
            continue;
        }
        const int before = baseline_position(original.positions[i], removedPosition, mode);
        run.deltas.entries.push_back({g.id(i), before - after.positions[j]});
        ++j;
    }
    return run;
}

RankingPositions rank_original(const DirectedGraph& g, const RankingConfig& cfg) {
    try {
        return rank(g, cfg);
    } catch (const Error& e) {
        rethrow_annotated(e, "ranking the original graph");
    }
}

} // namespace

std::string_view to_string(BaselineMode mode) noexcept {
    return mode == BaselineMode::compact ? "compact" : "gap";
}

BaselineMode parse_baseline_mode(std::string_view text) {
    if (text == "compact") return BaselineMode::compact;
    if (text == "gap") return BaselineMode::gap;
    throw Error(ErrorCode::invalid_argument, "unknown baseline mode '" + std::string(text) + "'",
                "baseline");
}

int baseline_position(int originalPosition, int removedPosition, BaselineMode mode) noexcept {
    if (mode == BaselineMode::compact && originalPosition > removedPosition) {
        return originalPosition - 1;
    }
    return originalPosition;
}

int DeltaVector::delta(const NodeId& node) const {
    const auto it = std::lower_bound(entries.begin(), entries.end(), node,
                                     [](const DeltaEntry& e, const NodeId& id) { return e.node < id; });
    if (it == entries.end() || it->node != node) {
        throw Error(ErrorCode::not_found, "no delta for node '" + node + "'", node);
    }
    return it->delta;
}

std::int64_t DeltaVector::sum() const noexcept {
    std::int64_t total = 0;
    for (const auto& e : entries) {
        total += e.delta;
    }
    return total;
}

const SensitivityRecord* SensitivityTable::find(const NodeId& node) const {
    const auto it = std::lower_bound(records.begin(), records.end(), node,
                                     [](const SensitivityRecord& r, const NodeId& id) { return r.node < id; });
    return it != records.end() && it->node == node ? &*it : nullptr;
}

DeltaVector ranking_deltas(const DirectedGraph& g, const RankingPositions& original,
                           const RankingConfig& cfg, BaselineMode mode, const NodeId& v) {
    return compute_deltas(g, original, cfg, mode, v).deltas;
}

DeltaVector ranking_deltas(const DirectedGraph& g, const RankingConfig& cfg, BaselineMode mode,
                           const NodeId& v) {
    g.index_of(v);
    return ranking_deltas(g, rank_original(g, cfg), cfg, mode, v);
}

SensitivityRecord fold_record(const DirectedGraph& g, const DeltaVector& d, int originalRank) {
    SensitivityRecord record;
    record.node = d.removed;
    record.originalRank = originalRank;
    for (const auto& label : g.label_universe()) {
        record.perLabelPos.emplace(label, 0);
        record.perLabelNeg.emplace(label, 0);
    }
    for (const auto& [node, delta] : d.entries) {
        if (delta > 0) {
            record.perLabelPos[g.label(node)] += delta;
        } else if (delta < 0) {
            record.perLabelNeg[g.label(node)] += -std::int64_t{delta};
        }
        record.si += std::abs(std::int64_t{delta});
    }
    for (const auto& [label, value] : record.perLabelPos) {
        record.siPos += value;
    }
    for (const auto& [label, value] : record.perLabelNeg) {
        record.siNeg += value;
    }
    return record;
}

AuditRun run_audit(const DirectedGraph& g, const RankingConfig& cfg, BaselineMode mode,
                   std::size_t threads) {
    cfg.validate();
    const auto n = g.node_count();
    if (n < 2) {
        throw Error(ErrorCode::invalid_argument, "sensitivity audit needs a graph with >= 2 nodes");
    }

    AuditRun result;
    result.original = rank_original(g, cfg);

    std::vector<DeltaRun> runs(n);
    parallel_for(0, n, std::max<std::size_t>(threads, 1), [&](std::size_t i) {
        try {
            runs[i] = compute_deltas(g, result.original, cfg, mode, g.id(i));
        } catch (const Error& e) {
            rethrow_annotated(e, "sweep aborted at node '" + g.id(i) + "'");
        }
    });

    result.table.fingerprint = provenance_fingerprint(g, cfg, mode);
    result.table.records.reserve(n);
    result.deltas.reserve(n);
    IterationStats& stats = result.iterations;
    stats.min = std::numeric_limits<int>::max();
    double totalIterations = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        result.table.records.push_back(fold_record(g, runs[i].deltas, result.original.positions[i]));
        result.deltas.push_back(std::move(runs[i].deltas));
        stats.min = std::min(stats.min, runs[i].iterations);
        stats.max = std::max(stats.max, runs[i].iterations);
        totalIterations += runs[i].iterations;
    }
    stats.rankings = n;
    stats.mean = totalIterations / static_cast<double>(n);
    return result;
}

SensitivityTable sensitivity_initial_check(const DirectedGraph& g, const RankingConfig& cfg,
                                           BaselineMode mode, std::size_t threads) {
    return run_audit(g, cfg, mode, threads).table;
}

std::string canonical_config(const RankingConfig& cfg, BaselineMode mode) {
    std::string out;
    out += "method=" + std::string(to_string(cfg.method)) + "\n";
    out += "damping=" + format_double(cfg.damping) + "\n";
    out += "tolerance=" + format_double(cfg.tolerance) + "\n";
    out += "max_iterations=" + std::to_string(cfg.maxIterations) + "\n";
    out += "hits_score_kind=" + std::string(to_string(cfg.hitsScoreKind)) + "\n";
    out += "teleportation=" + std::to_string(cfg.teleportation.size()) + "\n";
    for (const auto& [node, weight] : cfg.teleportation) {
        out += std::to_string(node.size()) + ":" + node + " " + format_double(weight) + "\n";
    }
    out += "baseline=" + std::string(to_string(mode)) + "\n";
    return out;
}

std::string graph_digest(const DirectedGraph& g) {
    return sha256_hex(canonical_form(g));
}

std::string provenance_fingerprint(std::string_view graphDigest, const RankingConfig& cfg,
                                   BaselineMode mode) {
    std::string material = "rankaudit-provenance-v1\ngraph=";
    material += graphDigest;
    material += '\n';
    material += canonical_config(cfg, mode);
    return sha256_hex(material);
}

std::string provenance_fingerprint(const DirectedGraph& g, const RankingConfig& cfg,
                                   BaselineMode mode) {
    return provenance_fingerprint(graph_digest(g), cfg, mode);
}

RankingPositions baseline_positions(const RankingPositions& original, const NodeId& removed,
                                    BaselineMode mode) {
    const int removedPosition = original.position(removed);
    RankingPositions result;
    result.nodes.reserve(original.size() - 1);
    result.positions.reserve(original.size() - 1);
    for (std::size_t i = 0; i < original.size(); ++i) {
        if (original.nodes[i] == removed) {
            continue;
        }
        result.nodes.push_back(original.nodes[i]);
        result.positions.push_back(baseline_position(original.positions[i], removedPosition, mode));
    }
    return result;
}

RankingPositions perturbed_positions(const RankingPositions& baseline, const DeltaVector& d) {
    if (baseline.size() != d.entries.size()) {
        throw Error(ErrorCode::invalid_argument, "delta vector does not match the baseline ranking");
    }
    RankingPositions result = baseline;
    for (std::size_t i = 0; i < d.entries.size(); ++i) {
        if (d.entries[i].node != baseline.nodes[i]) {
            throw Error(ErrorCode::invalid_argument,
                        "delta vector does not match the baseline ranking", d.entries[i].node);
        }
        result.positions[i] -= d.entries[i].delta;
    }
    return result;
}

} // namespace rankaudit

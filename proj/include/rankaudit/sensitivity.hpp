#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rankaudit/graph.hpp"
#include "rankaudit/ranking.hpp"

namespace rankaudit {

/**
 * How pre-removal positions are aligned with post-removal positions.
 *
 * compact: survivors keep their original order and are re-densified to 1..n-1,
 *          so only genuine reorderings produce a nonzero delta.
 * gap:     survivors keep their original 1..n positions; every node ranked below
 *          the removed one gains one place for free.
 */
enum class BaselineMode { compact, gap };

std::string_view to_string(BaselineMode mode) noexcept;
BaselineMode parse_baseline_mode(std::string_view text);

// Survivor position before the removal, as seen by `mode`.
int baseline_position(int originalPosition, int removedPosition, BaselineMode mode) noexcept;

struct DeltaEntry {
    NodeId node;
    int delta = 0; // before - after; positive means the node moved up

    friend bool operator==(const DeltaEntry&, const DeltaEntry&) = default;
};

struct DeltaVector {
    NodeId removed;
    std::vector<DeltaEntry> entries; // every survivor, ascending NodeId

    // Throws Error(not_found).
    int delta(const NodeId& node) const;
    std::int64_t sum() const noexcept;

    friend bool operator==(const DeltaVector&, const DeltaVector&) = default;
};

struct SensitivityRecord {
    NodeId node;
    int originalRank = 0;
    std::int64_t si = 0;
    std::int64_t siPos = 0;
    std::int64_t siNeg = 0;
    // One entry per label of the graph (zeros included).
    std::map<Label, std::int64_t> perLabelPos;
    std::map<Label, std::int64_t> perLabelNeg;

    friend bool operator==(const SensitivityRecord&, const SensitivityRecord&) = default;
};

struct SensitivityTable {
    std::vector<SensitivityRecord> records; // ascending NodeId
    std::string fingerprint;                // provenance_fingerprint of the inputs

    // nullptr if absent.
    const SensitivityRecord* find(const NodeId& node) const;

    friend bool operator==(const SensitivityTable&, const SensitivityTable&) = default;
};

struct IterationStats {
    int min = 0;
    int max = 0;
    double mean = 0.0;
    std::size_t rankings = 0;
};

// Everything one full sweep produces.
struct AuditRun {
    RankingPositions original;
    SensitivityTable table;
    std::vector<DeltaVector> deltas; // aligned with table.records
    IterationStats iterations;
};

// Deltas against a precomputed original ranking of g (aligned with g's nodes).
DeltaVector ranking_deltas(const DirectedGraph& g, const RankingPositions& original,
                           const RankingConfig& cfg, BaselineMode mode, const NodeId& v);

DeltaVector ranking_deltas(const DirectedGraph& g, const RankingConfig& cfg, BaselineMode mode,
                           const NodeId& v);

// Folds one delta vector into L1 / positive / negative indices and per-label splits.
SensitivityRecord fold_record(const DirectedGraph& g, const DeltaVector& d, int originalRank);

// Removes every node in turn on up to `threads` workers. Output does not depend
// on the thread count.
AuditRun run_audit(const DirectedGraph& g, const RankingConfig& cfg, BaselineMode mode,
                   std::size_t threads = 1);

SensitivityTable sensitivity_initial_check(const DirectedGraph& g, const RankingConfig& cfg,
                                           BaselineMode mode, std::size_t threads = 1);

// Canonical text of the ranking parameters and baseline mode.
std::string canonical_config(const RankingConfig& cfg, BaselineMode mode);

// SHA-256 of canonical_form(g).
std::string graph_digest(const DirectedGraph& g);

std::string provenance_fingerprint(std::string_view graphDigest, const RankingConfig& cfg,
                                   BaselineMode mode);
std::string provenance_fingerprint(const DirectedGraph& g, const RankingConfig& cfg,
                                   BaselineMode mode);

// The mode-aligned "before" ranking of the survivors of removing `removed`.
RankingPositions baseline_positions(const RankingPositions& original, const NodeId& removed,
                                    BaselineMode mode);

// The survivors' ranking after the removal, reconstructed from the baseline and deltas.
RankingPositions perturbed_positions(const RankingPositions& baseline, const DeltaVector& d);

} // namespace rankaudit

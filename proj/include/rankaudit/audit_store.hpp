#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rankaudit/graph.hpp"
#include "rankaudit/ranking.hpp"
#include "rankaudit/sensitivity.hpp"

namespace rankaudit {

inline constexpr int kCacheFormatVersion = 1;

/**
 * The precomputed audit: everything the interactive phase needs except the
 * graph itself, which is identified by `graphDigest`.
 *
 * On disk this is one JSON document with top-level keys
 * `version, fingerprint, config, positions, table, deltas`. `config` carries the
 * ranking parameters, the baseline mode and the graph digest. `fingerprint` is
 * the SHA-256 of the document serialized without it, so any edit to the stored
 * data is detected on read.
 */
struct AuditCache {
    int formatVersion = kCacheFormatVersion;
    std::string fingerprint;
    RankingConfig config;
    BaselineMode mode = BaselineMode::compact;
    std::string graphDigest;
    RankingPositions originalPositions;
    SensitivityTable table;
    std::vector<DeltaVector> deltas; // one per node, ascending removed id

    const DeltaVector* find_deltas(const NodeId& node) const;

    friend bool operator==(const AuditCache&, const AuditCache&) = default;
};

AuditCache make_cache(const DirectedGraph& g, const RankingConfig& cfg, BaselineMode mode,
                      AuditRun run);

// SHA-256 over the canonical serialization of everything but the fingerprint.
std::string cache_fingerprint(const AuditCache& cache);

// Canonical bytes; identical caches give identical output.
std::string serialize_cache(const AuditCache& cache);

// Throws Error(io_error) if the sink fails.
void write_cache(const AuditCache& cache, std::ostream& sink);

// Throws ParseError on malformed or truncated input, Error(unsupported_version)
// and Error(corrupt_cache) on validation failures.
AuditCache read_cache(std::istream& source);
AuditCache parse_cache(std::string_view bytes);

// File helpers; a `.gz` suffix selects gzip compression.
void save_cache(const AuditCache& cache, const std::filesystem::path& path);
AuditCache load_cache(const std::filesystem::path& path);

// Throws Error(fingerprint_mismatch) unless the cache was computed from g.
void verify_cache_matches(const AuditCache& cache, const DirectedGraph& g);

// Raw file contents, transparently gunzipped for `.gz` paths.
std::string read_file_bytes(const std::filesystem::path& path);

} // namespace rankaudit

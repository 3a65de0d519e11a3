#include "rankaudit/audit_store.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <zlib.h>

#include "rankaudit/digest.hpp"
#include "rankaudit/error.hpp"
#include "rankaudit/json_io.hpp"

namespace rankaudit {

namespace {

Json config_section(const AuditCache& cache) {
    Json config = to_json(cache.config, cache.mode);
    config["graph_digest"] = cache.graphDigest;
    return config;
}

Json deltas_section(const AuditCache& cache) {
    Json deltas = Json::object();
    for (const auto& d : cache.deltas) {
        append_member(deltas, d.removed, to_json(d));
    }
    return deltas;
}

Json build_document(const AuditCache& cache, bool withFingerprint) {
    Json doc;
    doc["version"] = cache.formatVersion;
    if (withFingerprint) {
        doc["fingerprint"] = cache.fingerprint;
    }
    doc["config"] = config_section(cache);
    doc["positions"] = to_json(cache.originalPositions);
    doc["table"] = to_json(cache.table);
    doc["deltas"] = deltas_section(cache);
    return doc;
}

[[noreturn]] void corrupt(const std::string& message) {
    throw Error(ErrorCode::corrupt_cache, "corrupt audit cache: " + message);
}

bool ends_with_gz(const std::filesystem::path& path) {
    return path.extension() == ".gz";
}

// Structural invariants the fingerprint alone cannot vouch for.
void check_consistency(const AuditCache& cache) {
    const auto& pos = cache.originalPositions;
    const auto n = pos.size();
    if (n < 2) {
        corrupt("fewer than two ranked nodes");
    }
    if (!std::is_sorted(pos.nodes.begin(), pos.nodes.end()) ||
        std::adjacent_find(pos.nodes.begin(), pos.nodes.end()) != pos.nodes.end()) {
        corrupt("positions are not keyed by ascending node id");
    }
    std::vector<char> seen(n + 1, 0);
    for (const int p : pos.positions) {
        if (p < 1 || static_cast<std::size_t>(p) > n || seen[p]) {
            corrupt("positions are not a permutation of 1..n");
        }
        seen[p] = 1;
    }
    if (cache.table.records.size() != n || cache.deltas.size() != n) {
        corrupt("table and deltas must hold one entry per node");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& record = cache.table.records[i];
        const auto& d = cache.deltas[i];
        if (record.node != pos.nodes[i] || d.removed != pos.nodes[i]) {
            corrupt("table/deltas do not follow node order at '" + pos.nodes[i] + "'");
        }
        if (record.originalRank != pos.positions[i]) {
            corrupt("original rank mismatch for '" + record.node + "'");
        }
        if (d.entries.size() != n - 1) {
            corrupt("deltas for '" + d.removed + "' do not cover every survivor");
        }
        for (std::size_t j = 0, k = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            if (d.entries[k++].node != pos.nodes[j]) {
                corrupt("deltas for '" + d.removed + "' are not keyed by survivor id");
            }
        }
    }
    const auto provenance = provenance_fingerprint(cache.graphDigest, cache.config, cache.mode);
    if (cache.table.fingerprint != provenance) {
        corrupt("table fingerprint does not match the stored configuration");
    }
}

} // namespace

const DeltaVector* AuditCache::find_deltas(const NodeId& node) const {
    const auto it = std::lower_bound(deltas.begin(), deltas.end(), node,
                                     [](const DeltaVector& d, const NodeId& id) { return d.removed < id; });
    return it != deltas.end() && it->removed == node ? &*it : nullptr;
}

AuditCache make_cache(const DirectedGraph& g, const RankingConfig& cfg, BaselineMode mode,
                      AuditRun run) {
    AuditCache cache;
    cache.config = cfg;
    cache.mode = mode;
    cache.graphDigest = graph_digest(g);
    cache.originalPositions = std::move(run.original);
    cache.table = std::move(run.table);
    cache.deltas = std::move(run.deltas);
    cache.fingerprint = cache_fingerprint(cache);
    return cache;
}

std::string cache_fingerprint(const AuditCache& cache) {
    return sha256_hex(build_document(cache, false).dump());
}

std::string serialize_cache(const AuditCache& cache) {
    return build_document(cache, true).dump() + "\n";
}

void write_cache(const AuditCache& cache, std::ostream& sink) {
    const auto bytes = serialize_cache(cache);
    sink.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    sink.flush();
    if (!sink) {
        throw Error(ErrorCode::io_error, "failed to write audit cache");
    }
}

AuditCache parse_cache(std::string_view bytes) {
    Json doc;
    try {
        doc = Json::parse(bytes.begin(), bytes.end());
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("audit cache is not valid JSON: ") + e.what(), 0);
    }
    if (!doc.is_object() || !doc.contains("version") || !doc["version"].is_number_integer()) {
        throw ParseError("audit cache lacks an integer 'version'", 0);
    }
    AuditCache cache;
    cache.formatVersion = doc["version"].get<int>();
    if (cache.formatVersion != kCacheFormatVersion) {
        throw Error(ErrorCode::unsupported_version,
                    "unsupported audit cache version " + std::to_string(cache.formatVersion) +
                        " (expected " + std::to_string(kCacheFormatVersion) + ")",
                    "version");
    }
    try {
        cache.fingerprint = doc.at("fingerprint").get<std::string>();
        const auto& config = doc.at("config");
        std::tie(cache.config, cache.mode) = config_from_json(config);
        cache.graphDigest = config.at("graph_digest").get<std::string>();
        cache.originalPositions = positions_from_json(doc.at("positions"));
        cache.table = table_from_json(doc.at("table"));
        for (const auto& [node, deltas] : doc.at("deltas").items()) {
            cache.deltas.push_back(deltas_from_json(node, deltas));
        }
    } catch (const Json::exception& e) {
        corrupt(e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::corrupt_cache) {
            throw;
        }
        corrupt(e.what());
    }
    if (cache_fingerprint(cache) != cache.fingerprint) {
        corrupt("fingerprint does not match contents");
    }
    check_consistency(cache);
    return cache;
}

AuditCache read_cache(std::istream& source) {
    std::string bytes{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
    if (source.bad()) {
        throw Error(ErrorCode::io_error, "failed to read audit cache");
    }
    return parse_cache(bytes);
}

std::string read_file_bytes(const std::filesystem::path& path) {
    if (ends_with_gz(path)) {
        gzFile file = gzopen(path.c_str(), "rb");
        if (file == nullptr) {
            throw Error(ErrorCode::io_error, "cannot open " + path.string(), path.string());
        }
        std::string bytes;
        char buffer[1 << 16];
        int got = 0;
        while ((got = gzread(file, buffer, sizeof buffer)) > 0) {
            bytes.append(buffer, static_cast<std::size_t>(got));
        }
        const bool failed = got < 0;
        gzclose(file);
        if (failed) {
            throw ParseError("corrupt gzip stream in " + path.string(), 0);
        }
        return bytes;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot open " + path.string(), path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void save_cache(const AuditCache& cache, const std::filesystem::path& path) {
    const auto bytes = serialize_cache(cache);
    if (ends_with_gz(path)) {
        gzFile file = gzopen(path.c_str(), "wb9");
        if (file == nullptr) {
            throw Error(ErrorCode::io_error, "cannot create " + path.string(), path.string());
        }
        const auto written = gzwrite(file, bytes.data(), static_cast<unsigned>(bytes.size()));
        if (gzclose(file) != Z_OK || written != static_cast<int>(bytes.size())) {
            throw Error(ErrorCode::io_error, "failed to write " + path.string(), path.string());
        }
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::io_error, "cannot create " + path.string(), path.string());
    }
    write_cache(cache, out);
}

AuditCache load_cache(const std::filesystem::path& path) {
    return parse_cache(read_file_bytes(path));
}

void verify_cache_matches(const AuditCache& cache, const DirectedGraph& g) {
    if (graph_digest(g) != cache.graphDigest) {
        throw Error(ErrorCode::fingerprint_mismatch,
                    "audit cache was computed for a different graph; rerun precompute");
    }
    if (cache.originalPositions.nodes.size() != g.node_count() ||
        !std::equal(g.nodes().begin(), g.nodes().end(), cache.originalPositions.nodes.begin())) {
        throw Error(ErrorCode::fingerprint_mismatch, "audit cache node set differs from the graph");
    }
}

} // namespace rankaudit

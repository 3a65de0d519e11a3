#include "rankaudit/graph.hpp"

#include <algorithm>
#include <set>

#include "rankaudit/error.hpp"

namespace rankaudit {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(kWhitespace);
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(kWhitespace);
    return s.substr(first, last - first + 1);
}

struct Row {
    std::size_t line;
    std::string first;
    std::string second;
};

// Splits delimited two-column text into rows. Blank lines are ignored.
std::vector<Row> read_rows(std::string_view text, bool header, std::string_view what) {
    std::vector<Row> rows;
    char separator = 0;
    bool skippedHeader = !header;
    std::size_t lineNo = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineNo;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.find_first_not_of(" \r\t") == std::string_view::npos) {
            continue;
        }
        if (!skippedHeader) {
            skippedHeader = true;
            continue;
        }
        if (separator == 0) {
            separator = line.find('\t') != std::string_view::npos ? '\t' : ',';
        }
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const auto cut = line.find(separator, start);
            fields.push_back(trim(line.substr(start, cut == std::string_view::npos ? cut : cut - start)));
            if (cut == std::string_view::npos) {
                break;
            }
            start = cut + 1;
        }
        if (fields.size() != 2) {
            throw ParseError(std::string(what) + ": expected 2 columns, found " +
                                 std::to_string(fields.size()),
                             lineNo);
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw ParseError(std::string(what) + ": empty field", lineNo);
        }
        rows.push_back({lineNo, std::string(fields[0]), std::string(fields[1])});
    }
    return rows;
}

} // namespace

DirectedGraph::DirectedGraph(std::map<NodeId, Label> labels, const std::vector<Edge>& edges) {
    for (const auto& [source, target] : edges) {
        labels.try_emplace(source, kUnlabeled);
        labels.try_emplace(target, kUnlabeled);
    }
    ids_.reserve(labels.size());
    labels_.reserve(labels.size());
    for (auto& [node, label] : labels) {
        if (node.empty()) {
            throw Error(ErrorCode::invalid_argument, "node id must be non-empty");
        }
        ids_.push_back(node);
        labels_.push_back(std::move(label));
    }
    build_index();

    out_.assign(ids_.size(), {});
    in_.assign(ids_.size(), {});
    for (const auto& [source, target] : edges) {
        if (source == target) {
            throw Error(ErrorCode::invalid_argument, "self-loop on " + source, source);
        }
        const auto s = index_.at(source);
        const auto t = index_.at(target);
        out_[s].push_back(t);
        in_[t].push_back(s);
    }
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        std::sort(out_[i].begin(), out_[i].end());
        std::sort(in_[i].begin(), in_[i].end());
        if (std::adjacent_find(out_[i].begin(), out_[i].end()) != out_[i].end()) {
            throw Error(ErrorCode::invalid_argument, "duplicate edge from " + ids_[i], ids_[i]);
        }
    }
    edge_count_ = edges.size();
}

void DirectedGraph::build_index() {
    index_.clear();
    index_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        index_.emplace(ids_[i], i);
    }
}

std::size_t DirectedGraph::index_of(const NodeId& node) const {
    const auto it = index_.find(node);
    if (it == index_.end()) {
        throw Error(ErrorCode::not_found, "unknown node '" + node + "'", node);
    }
    return it->second;
}

std::vector<Label> DirectedGraph::label_universe() const {
    std::set<Label> distinct(labels_.begin(), labels_.end());
    return {distinct.begin(), distinct.end()};
}

std::vector<DirectedGraph::Edge> DirectedGraph::edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count_);
    for (std::size_t s = 0; s < ids_.size(); ++s) {
        for (const auto t : out_[s]) {
            result.emplace_back(ids_[s], ids_[t]);
        }
    }
    return result;
}

ParseResult parse_graph(std::string_view edgeText, std::string_view labelText,
                        const ParseOptions& options) {
    ParseResult result;

    std::map<NodeId, Label> labels;
    for (auto& row : read_rows(labelText, options.header, "label file")) {
        const auto [it, inserted] = labels.try_emplace(row.first, row.second);
        if (!inserted && it->second != row.second) {
            throw ParseError("label file: conflicting labels for node '" + row.first + "'",
                             row.line);
        }
    }

    std::set<DirectedGraph::Edge> seen;
    std::vector<DirectedGraph::Edge> edges;
    for (auto& row : read_rows(edgeText, options.header, "edge file")) {
        if (row.first == row.second) {
            ++result.droppedSelfLoops;
            labels.try_emplace(row.first, kUnlabeled);
            continue;
        }
        DirectedGraph::Edge edge{std::move(row.first), std::move(row.second)};
        if (!seen.insert(edge).second) {
            ++result.droppedDuplicates;
            continue;
        }
        edges.push_back(std::move(edge));
    }

    result.graph = DirectedGraph(std::move(labels), edges);
    if (result.graph.empty()) {
        throw Error(ErrorCode::empty_graph, "graph has no nodes");
    }
    return result;
}

std::string serialize_edges(const DirectedGraph& g) {
    std::string text;
    for (const auto& [source, target] : g.edges()) {
        text += source;
        text += '\t';
        text += target;
        text += '\n';
    }
    return text;
}

std::string serialize_labels(const DirectedGraph& g) {
    std::string text;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        text += g.id(i);
        text += '\t';
        text += g.label(i);
        text += '\n';
    }
    return text;
}

DirectedGraph remove_node(const DirectedGraph& g, const NodeId& v) {
    const auto removed = g.index_of(v);
    const auto remap = [removed](std::size_t i) { return i > removed ? i - 1 : i; };

    DirectedGraph result;
    const auto n = g.node_count();
    result.ids_.reserve(n - 1);
    result.labels_.reserve(n - 1);
    result.out_.reserve(n - 1);
    result.in_.reserve(n - 1);
    const auto copy_without = [&](const std::vector<std::size_t>& list) {
        std::vector<std::size_t> kept;
        kept.reserve(list.size());
        for (const auto j : list) {
            if (j != removed) {
                kept.push_back(remap(j));
            }
        }
        return kept;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (i == removed) {
            continue;
        }
        result.ids_.push_back(g.ids_[i]);
        result.labels_.push_back(g.labels_[i]);
        result.out_.push_back(copy_without(g.out_[i]));
        result.in_.push_back(copy_without(g.in_[i]));
    }
    result.edge_count_ = g.edge_count_ - g.out_[removed].size() - g.in_[removed].size();
    result.build_index();
    return result;
}

Degree degree(const DirectedGraph& g, const NodeId& v) {
    const auto i = g.index_of(v);
    Degree d;
    d.in = g.predecessors(i).size();
    d.out = g.successors(i).size();
    d.total = d.in + d.out;
    return d;
}

GraphSummary summarize(const DirectedGraph& g) {
    GraphSummary summary;
    summary.nodeCount = g.node_count();
    summary.edgeCount = g.edge_count();
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        ++summary.labelCounts[g.label(i)];
    }
    return summary;
}

std::string canonical_form(const DirectedGraph& g) {
    // Length-prefixed fields keep ids containing separators unambiguous.
    std::string out = "nodes " + std::to_string(g.node_count()) + "\n";
    const auto field = [&out](std::string_view s) {
        out += std::to_string(s.size());
        out += ':';
        out += s;
        out += ' ';
    };
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        field(g.id(i));
        field(g.label(i));
        out += '\n';
    }
    out += "edges " + std::to_string(g.edge_count()) + "\n";
    for (const auto& [source, target] : g.edges()) {
        field(source);
        field(target);
        out += '\n';
    }
    return out;
}

} // namespace rankaudit

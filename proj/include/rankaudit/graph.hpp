#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rankaudit {

using NodeId = std::string;
using Label = std::string;

// Label given to nodes that appear in the edge list but not in the label list.
inline constexpr std::string_view kUnlabeled = "UNLABELED";

struct Degree {
    std::size_t in = 0;
    std::size_t out = 0;
    std::size_t total = 0;

    friend bool operator==(const Degree&, const Degree&) = default;
};

struct GraphSummary {
    std::size_t nodeCount = 0;
    std::size_t edgeCount = 0;
    std::map<Label, std::size_t> labelCounts;
};

/**
 * Immutable labeled directed graph.
 *
 * Nodes are stored in ascending NodeId order, so the dense index of a node
 * doubles as its lexicographic rank. Adjacency lists hold dense indices and are
 * sorted ascending. There are no self-loops and no parallel edges.
 */
class DirectedGraph {
public:
    using Edge = std::pair<NodeId, NodeId>;

    DirectedGraph() = default;

    // Nodes are the label keys plus every edge endpoint; endpoints without a label
    // get kUnlabeled. Self-loops and duplicate edges are rejected (parse_graph is
    // the lenient path).
    DirectedGraph(std::map<NodeId, Label> labels, const std::vector<Edge>& edges);

    std::size_t node_count() const noexcept { return ids_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    bool empty() const noexcept { return ids_.empty(); }

    std::span<const NodeId> nodes() const noexcept { return ids_; }
    const NodeId& id(std::size_t index) const { return ids_.at(index); }
    const Label& label(std::size_t index) const { return labels_.at(index); }
    const Label& label(const NodeId& node) const { return labels_[index_of(node)]; }

    bool contains(const NodeId& node) const { return index_.contains(node); }

    // Throws Error(not_found) for unknown ids.
    std::size_t index_of(const NodeId& node) const;

    std::span<const std::size_t> successors(std::size_t index) const { return out_.at(index); }
    std::span<const std::size_t> predecessors(std::size_t index) const { return in_.at(index); }

    // Sorted list of distinct labels.
    std::vector<Label> label_universe() const;

    // All edges in (source, target) order.
    std::vector<Edge> edges() const;

private:
    friend DirectedGraph remove_node(const DirectedGraph& g, const NodeId& v);

    void build_index();

    std::vector<NodeId> ids_;
    std::vector<Label> labels_;
    std::unordered_map<NodeId, std::size_t> index_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
    std::size_t edge_count_ = 0;
};

struct ParseOptions {
    bool header = false;
};

struct ParseResult {
    DirectedGraph graph;
    std::size_t droppedSelfLoops = 0;
    std::size_t droppedDuplicates = 0;
};

// Edge rows are `source<sep>target`, label rows `node<sep>label`; the separator is
// `\t` if the first data row contains a tab, `,` otherwise. Nodes listed only in
// the label text become isolated nodes.
ParseResult parse_graph(std::string_view edgeText, std::string_view labelText,
                        const ParseOptions& options = {});

// Serializations accepted by parse_graph (tab separated, no header).
std::string serialize_edges(const DirectedGraph& g);
std::string serialize_labels(const DirectedGraph& g);

DirectedGraph remove_node(const DirectedGraph& g, const NodeId& v);

Degree degree(const DirectedGraph& g, const NodeId& v);

GraphSummary summarize(const DirectedGraph& g);

// Unambiguous byte encoding of nodes, labels and edges; input to fingerprints.
std::string canonical_form(const DirectedGraph& g);

} // namespace rankaudit

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pairsim {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;

struct EdgeListOptions {
    // Store each line "s d" as the edge d -> s instead of s -> d. Useful when
    // a dataset's citation direction is the opposite of what the measures
    // expect.
    bool reverse_edges = false;
};

// Immutable directed simple graph in CSR form, keeping both adjacency
// directions. Internal ids are dense 0..node_count()-1 assigned in
// first-seen order of the input tokens. Duplicate edges are collapsed (and
// counted); self-loops are kept.
class Graph {
public:
    Graph() = default;

    // Builds from explicit edges over ids 0..node_count-1. Duplicates are
    // collapsed and counted; node names default to the decimal id.
    static Graph from_edges(NodeId node_count,
                            std::vector<std::pair<NodeId, NodeId>> edges);

    NodeId node_count() const { return node_count_; }
    std::size_t edge_count() const { return out_targets_.size(); }
    std::size_t duplicate_edges_collapsed() const { return duplicates_; }

    // Sorted ascending by node id; empty when the node has none.
    std::span<const NodeId> out_neighbors(NodeId v) const;
    std::span<const NodeId> in_neighbors(NodeId v) const;

    // All nodes within `radius` undirected hops of `center`, sorted,
    // including `center` itself.
    std::vector<NodeId> ball(NodeId center, std::uint32_t radius) const;

    const std::string& node_name(NodeId v) const;
    std::optional<NodeId> find_node(std::string_view name) const;

private:
    void check_node(NodeId v) const;

    NodeId node_count_ = 0;
    // CSR offsets are node_count_+1 entries (or empty for the empty graph).
    std::vector<std::size_t> out_offsets_;
    std::vector<std::size_t> in_offsets_;
    std::vector<NodeId> out_targets_;
    std::vector<NodeId> in_targets_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> name_to_id_;
    std::size_t duplicates_ = 0;

    friend Graph load_edge_list(std::istream&, const EdgeListOptions&);
};

// One directed edge per line, "src dst" whitespace-separated, meaning src
// references dst. Lines whose first non-blank character is '#' and blank
// lines are ignored. Throws ParseError with the line number on bad lines.
Graph load_edge_list(std::istream& in, const EdgeListOptions& opts = {});

// Same, reading from a file; gzip input is detected by magic bytes.
Graph load_edge_list_file(const std::string& path,
                          const EdgeListOptions& opts = {});

// Partial node -> label assignment with interned label names. Nodes can be
// unlabeled; labels never cover nodes outside the graph.
class LabelMap {
public:
    void set(NodeId node, std::string_view label);

    std::optional<LabelId> label_of(NodeId node) const;
    std::size_t labeled_count() const { return labels_.size(); }
    std::size_t label_count() const { return label_names_.size(); }
    const std::string& label_name(LabelId id) const;
    // Label-file lines that referenced unknown node tokens.
    std::size_t unknown_tokens_skipped() const { return skipped_; }

private:
    std::unordered_map<NodeId, LabelId> labels_;
    std::vector<std::string> label_names_;
    std::unordered_map<std::string, LabelId> name_to_label_;
    std::size_t skipped_ = 0;

    friend LabelMap load_labels(std::istream&, const Graph&);
};

// Lines "node_token<TAB>label_token". Tokens naming nodes absent from the
// graph are skipped and counted.
LabelMap load_labels(std::istream& in, const Graph& g);
LabelMap load_labels_file(const std::string& path, const Graph& g);

}  // namespace pairsim

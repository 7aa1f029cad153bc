#include "pairsim/graph.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>

#include "pairsim/errors.hpp"
#include "pairsim/io.hpp"

namespace pairsim {

namespace {

// Whitespace tokens of one line; '\r' from CRLF input counts as whitespace.
std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    auto is_ws = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
    };
    while (i < line.size()) {
        while (i < line.size() && is_ws(line[i])) ++i;
        std::size_t start = i;
        while (i < line.size() && !is_ws(line[i])) ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

std::vector<std::size_t> offsets_from_sorted_sources(
    NodeId node_count, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::vector<std::size_t> offsets(node_count + 1, 0);
    for (const auto& [s, d] : edges) ++offsets[s + 1];
    for (NodeId v = 0; v < node_count; ++v) offsets[v + 1] += offsets[v];
    return offsets;
}

}  // namespace

Graph Graph::from_edges(NodeId node_count,
                        std::vector<std::pair<NodeId, NodeId>> edges) {
    for (const auto& [s, d] : edges) {
        if (s >= node_count || d >= node_count)
            throw BoundsError("edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::unique(edges.begin(), edges.end());
    std::size_t duplicates = static_cast<std::size_t>(edges.end() - dup);
    edges.erase(dup, edges.end());

    Graph g;
    g.node_count_ = node_count;
    g.duplicates_ = duplicates;

    g.out_offsets_ = offsets_from_sorted_sources(node_count, edges);
    g.out_targets_.reserve(edges.size());
    for (const auto& [s, d] : edges) g.out_targets_.push_back(d);

    // Transpose: scanning edges sorted by (src, dst) appends each in-list in
    // ascending source order, so in-adjacency comes out sorted too.
    std::vector<std::size_t> in_degree(node_count + 1, 0);
    for (const auto& [s, d] : edges) ++in_degree[d + 1];
    g.in_offsets_.assign(node_count + 1, 0);
    for (NodeId v = 0; v < node_count; ++v)
        g.in_offsets_[v + 1] = g.in_offsets_[v] + in_degree[v + 1];
    g.in_targets_.assign(edges.size(), 0);
    std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    for (const auto& [s, d] : edges) g.in_targets_[cursor[d]++] = s;

    g.names_.reserve(node_count);
    for (NodeId v = 0; v < node_count; ++v) {
        g.names_.push_back(std::to_string(v));
        g.name_to_id_.emplace(g.names_.back(), v);
    }
    return g;
}

void Graph::check_node(NodeId v) const {
    if (v >= node_count_)
        throw BoundsError("node id " + std::to_string(v) + " out of range (" +
                          std::to_string(node_count_) + " nodes)");
}

std::span<const NodeId> Graph::out_neighbors(NodeId v) const {
    check_node(v);
    return {out_targets_.data() + out_offsets_[v],
            out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const NodeId> Graph::in_neighbors(NodeId v) const {
    check_node(v);
    return {in_targets_.data() + in_offsets_[v],
            in_offsets_[v + 1] - in_offsets_[v]};
}

std::vector<NodeId> Graph::ball(NodeId center, std::uint32_t radius) const {
    check_node(center);
    std::vector<std::uint8_t> seen(node_count_, 0);
    std::vector<NodeId> result{center};
    std::vector<NodeId> frontier{center};
    std::vector<NodeId> next;
    seen[center] = 1;
    for (std::uint32_t depth = 0; depth < radius && !frontier.empty(); ++depth) {
        next.clear();
        for (NodeId u : frontier) {
            for (auto adjacency : {out_neighbors(u), in_neighbors(u)}) {
                for (NodeId v : adjacency) {
                    if (!seen[v]) {
                        seen[v] = 1;
                        next.push_back(v);
                        result.push_back(v);
                    }
                }
            }
        }
        std::swap(frontier, next);
    }
    std::sort(result.begin(), result.end());
    return result;
}

const std::string& Graph::node_name(NodeId v) const {
    check_node(v);
    return names_[v];
}

std::optional<NodeId> Graph::find_node(std::string_view name) const {
    auto it = name_to_id_.find(std::string(name));
    if (it == name_to_id_.end()) return std::nullopt;
    return it->second;
}

Graph load_edge_list(std::istream& in, const EdgeListOptions& opts) {
    std::vector<std::string> names;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::pair<NodeId, NodeId>> edges;

    auto intern = [&](std::string_view token) -> NodeId {
        auto [it, inserted] = ids.emplace(token, static_cast<NodeId>(names.size()));
        if (inserted) names.emplace_back(token);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = split_tokens(line);
        if (tokens.empty() || tokens[0].front() == '#') continue;
        if (tokens.size() != 2)
            throw ParseError("edge list line " + std::to_string(line_no) +
                             ": expected 2 tokens, got " +
                             std::to_string(tokens.size()));
        NodeId s = intern(tokens[0]);
        NodeId d = intern(tokens[1]);
        if (opts.reverse_edges) std::swap(s, d);
        edges.emplace_back(s, d);
    }

    Graph g = Graph::from_edges(static_cast<NodeId>(names.size()), std::move(edges));
    g.names_ = std::move(names);
    g.name_to_id_ = std::move(ids);
    return g;
}

Graph load_edge_list_file(const std::string& path, const EdgeListOptions& opts) {
    std::istringstream in(read_text_file(path));
    return load_edge_list(in, opts);
}

void LabelMap::set(NodeId node, std::string_view label) {
    auto [it, inserted] =
        name_to_label_.emplace(label, static_cast<LabelId>(label_names_.size()));
    if (inserted) label_names_.emplace_back(label);
    labels_[node] = it->second;
}

std::optional<LabelId> LabelMap::label_of(NodeId node) const {
    auto it = labels_.find(node);
    if (it == labels_.end()) return std::nullopt;
    return it->second;
}

const std::string& LabelMap::label_name(LabelId id) const {
    if (id >= label_names_.size()) throw BoundsError("label id out of range");
    return label_names_[id];
}

LabelMap load_labels(std::istream& in, const Graph& g) {
    LabelMap map;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = split_tokens(line);
        if (tokens.empty() || tokens[0].front() == '#') continue;
        if (tokens.size() != 2)
            throw ParseError("label file line " + std::to_string(line_no) +
                             ": expected 2 tokens, got " +
                             std::to_string(tokens.size()));
        auto node = g.find_node(tokens[0]);
        if (!node) {
            ++map.skipped_;
            continue;
        }
        map.set(*node, tokens[1]);
    }
    return map;
}

LabelMap load_labels_file(const std::string& path, const Graph& g) {
    std::istringstream in(read_text_file(path));
    return load_labels(in, g);
}

}  // namespace pairsim

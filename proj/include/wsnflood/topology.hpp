// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wsnflood/exact.hpp"

namespace wsnflood::topology {

using NodeId = std::size_t;

struct Linear {
    std::uint64_t n = 1;  // node count
    friend bool operator==(const Linear&, const Linear&) = default;
};

struct Binary {
    std::uint64_t d = 0;
    friend bool operator==(const Binary&, const Binary&) = default;
};

/// Binary through depth s, ternary below it: every node at depth >= s has 3 children.
struct Nested {
    std::uint64_t s = 0;
    std::uint64_t d = 0;
    friend bool operator==(const Nested&, const Nested&) = default;
};

struct Qary {
    std::uint64_t q = 2;
    std::uint64_t d = 0;
    friend bool operator==(const Qary&, const Qary&) = default;
};

using TopologySpec = std::variant<Linear, Binary, Nested, Qary>;

/// Throws InvalidSpec when the spec's invariants do not hold.
void validate(const TopologySpec& spec);

/// Depth of the deepest level the spec describes.
std::uint64_t depth(const TopologySpec& spec);

/// Number of nodes at depth m, computed from the shape alone (no tree is built).
BigInt level_width(const TopologySpec& spec, std::uint64_t m);

/// Total node count of the realized tree.
BigInt node_count(const TopologySpec& spec);

/// "binary:4", "nested:2,5", "qary:3,6", "linear:10".
std::string to_string(const TopologySpec& spec);
TopologySpec parse_spec(const std::string& text);

struct Node {
    NodeId id = 0;
    std::uint64_t depth = 0;
    std::optional<NodeId> parent;
    std::vector<NodeId> children;

    friend bool operator==(const Node&, const Node&) = default;
};

/// Rooted tree over dense ids 0..size()-1. Trees from build() use breadth-first ids
/// with the base station at 0; spanning trees keep the source graph's id order.
class Tree {
public:
    Tree() = default;
    explicit Tree(std::vector<Node> nodes, std::optional<TopologySpec> spec = std::nullopt);

    std::size_t size() const noexcept { return nodes_.size(); }
    const Node& node(NodeId id) const { return nodes_.at(id); }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const std::optional<TopologySpec>& spec() const noexcept { return spec_; }

    NodeId root() const noexcept { return root_; }

    /// Maximum node depth.
    std::uint64_t height() const noexcept { return levels_.empty() ? 0 : levels_.size() - 1; }

    /// Ids at depth m in ascending order; empty past the deepest level.
    const std::vector<NodeId>& level(std::uint64_t m) const;

    friend bool operator==(const Tree& a, const Tree& b) { return a.nodes_ == b.nodes_; }

private:
    std::vector<Node> nodes_;
    std::optional<TopologySpec> spec_;
    NodeId root_ = 0;
    std::vector<std::vector<NodeId>> levels_;
};

Tree build(const TopologySpec& spec);

/// Number of nodes whose depth equals m; 0 past the deepest level.
std::size_t nodes_at_depth(const Tree& tree, std::uint64_t m);

struct AdjacencyGraph {
    std::vector<NodeId> ids;
    std::vector<std::pair<NodeId, NodeId>> edges;
};

/// Checks there are no self-loops and every edge endpoint is a listed id.
void validate(const AdjacencyGraph& graph);

/// Parses one "u v" pair per line; blank lines and '#' comments are skipped.
/// Node ids are the union of endpoints and any lone ids listed on a line by themselves.
AdjacencyGraph parse_edge_list(const std::string& text);

/// Tree edges of `tree` as an undirected graph.
AdjacencyGraph as_graph(const Tree& tree);

/// Breadth-first spanning tree rooted at `root`. A node's parent is the smallest-id
/// neighbour at the preceding depth. Graph ids are compacted to 0..n-1 preserving
/// their order (a no-op for dense ids); original_id maps back.
struct SpanningTree {
    Tree tree;
    std::vector<NodeId> original_id;  // original_id[tree id]
};

SpanningTree extract_spanning_tree(const AdjacencyGraph& graph, NodeId root);

}  // namespace wsnflood::topology

// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#include "wsnflood/topology.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <sstream>

#include "wsnflood/errors.hpp"

namespace wsnflood::topology {

namespace {

// Largest tree build() will materialize.
constexpr std::uint64_t kMaxBuildNodes = 50'000'000;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

std::uint64_t children_per_node(const TopologySpec& spec, std::uint64_t depth_of_parent) {
    return std::visit(
        Overloaded{
            [&](const Linear& s) -> std::uint64_t { return depth_of_parent + 1 < s.n ? 1 : 0; },
            [&](const Binary& s) -> std::uint64_t { return depth_of_parent < s.d ? 2 : 0; },
            [&](const Nested& s) -> std::uint64_t {
                if (depth_of_parent >= s.d) return 0;
                return depth_of_parent < s.s ? 2 : 3;
            },
            [&](const Qary& s) -> std::uint64_t { return depth_of_parent < s.d ? s.q : 0; },
        },
        spec);
}

std::uint64_t parse_uint(std::string_view text, const std::string& whole) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError("bad topology spec '" + whole + "': expected a nonnegative integer, got '" +
                         std::string(text) + "'");
    }
    return value;
}

std::vector<std::uint64_t> parse_uint_list(std::string_view text, const std::string& whole) {
    std::vector<std::uint64_t> out;
    while (true) {
        auto comma = text.find(',');
        out.push_back(parse_uint(text.substr(0, comma), whole));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

void validate(const TopologySpec& spec) {
    std::visit(Overloaded{
                   [](const Linear& s) {
                       if (s.n < 1) throw InvalidSpec("linear topology needs at least one node");
                   },
                   [](const Binary&) {},
                   [](const Nested& s) {
                       if (s.s > s.d) {
                           throw InvalidSpec("nested topology requires s <= d (got s=" + std::to_string(s.s) +
                                             ", d=" + std::to_string(s.d) + ")");
                       }
                   },
                   [](const Qary& s) {
                       if (s.q < 1) throw InvalidSpec("q-ary topology requires q >= 1");
                   },
               },
               spec);
}

std::uint64_t depth(const TopologySpec& spec) {
    return std::visit(Overloaded{
                          [](const Linear& s) { return s.n - 1; },
                          [](const Binary& s) { return s.d; },
                          [](const Nested& s) { return s.d; },
                          [](const Qary& s) { return s.d; },
                      },
                      spec);
}

BigInt level_width(const TopologySpec& spec, std::uint64_t m) {
    validate(spec);
    if (m > depth(spec)) return 0;
    return std::visit(Overloaded{
                          [](const Linear&) { return BigInt(1); },
                          [&](const Binary&) { return pow(BigInt(2), m); },
                          [&](const Nested& s) {
                              if (m <= s.s) return pow(BigInt(2), m);
                              return BigInt(pow(BigInt(2), s.s) * pow(BigInt(3), m - s.s));
                          },
                          [&](const Qary& s) { return pow(BigInt(s.q), m); },
                      },
                      spec);
}

BigInt node_count(const TopologySpec& spec) {
    BigInt total = 0;
    for (std::uint64_t m = 0; m <= depth(spec); ++m) total += level_width(spec, m);
    return total;
}

std::string to_string(const TopologySpec& spec) {
    return std::visit(Overloaded{
                          [](const Linear& s) { return "linear:" + std::to_string(s.n); },
                          [](const Binary& s) { return "binary:" + std::to_string(s.d); },
                          [](const Nested& s) {
                              return "nested:" + std::to_string(s.s) + "," + std::to_string(s.d);
                          },
                          [](const Qary& s) { return "qary:" + std::to_string(s.q) + "," + std::to_string(s.d); },
                      },
                      spec);
}

TopologySpec parse_spec(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ParseError("bad topology spec '" + text + "': expected <family>:<params>");
    }
    const std::string family = text.substr(0, colon);
    const auto params = parse_uint_list(std::string_view(text).substr(colon + 1), text);
    auto expect = [&](std::size_t count, const char* shape) {
        if (params.size() != count) {
            throw ParseError("bad topology spec '" + text + "': expected " + shape);
        }
    };
    TopologySpec spec;
    if (family == "linear") {
        expect(1, "linear:<n>");
        spec = Linear{params[0]};
    } else if (family == "binary") {
        expect(1, "binary:<d>");
        spec = Binary{params[0]};
    } else if (family == "nested") {
        expect(2, "nested:<s>,<d>");
        spec = Nested{params[0], params[1]};
    } else if (family == "qary") {
        expect(2, "qary:<q>,<d>");
        spec = Qary{params[0], params[1]};
    } else {
        throw ParseError("unknown topology family '" + family + "'");
    }
    validate(spec);
    return spec;
}

Tree::Tree(std::vector<Node> nodes, std::optional<TopologySpec> spec)
    : nodes_(std::move(nodes)), spec_(std::move(spec)) {
    if (nodes_.empty()) throw InvalidSpec("tree must contain at least one node");
    std::size_t roots = 0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const Node& n = nodes_[k];
        if (n.id != k) throw InvalidSpec("tree node ids must be dense and in order");
        if (!n.parent) {
            ++roots;
            root_ = k;
            if (n.depth != 0) throw InvalidSpec("root must sit at depth 0");
            continue;
        }
        if (*n.parent >= nodes_.size()) throw InvalidSpec("parent id out of range");
        const Node& p = nodes_[*n.parent];
        if (n.depth != p.depth + 1) throw InvalidSpec("child depth must equal parent depth + 1");
        if (std::find(p.children.begin(), p.children.end(), n.id) == p.children.end()) {
            throw InvalidSpec("parent does not list node " + std::to_string(n.id) + " as a child");
        }
    }
    if (roots != 1) throw InvalidSpec("tree must have exactly one root");
    std::size_t child_links = 0;
    for (const Node& n : nodes_) child_links += n.children.size();
    if (child_links != nodes_.size() - 1) throw InvalidSpec("children lists disagree with parent links");

    for (const Node& n : nodes_) {
        if (levels_.size() <= n.depth) levels_.resize(n.depth + 1);
        levels_[n.depth].push_back(n.id);
    }
}

const std::vector<NodeId>& Tree::level(std::uint64_t m) const {
    static const std::vector<NodeId> empty;
    return m < levels_.size() ? levels_[m] : empty;
}

Tree build(const TopologySpec& spec) {
    validate(spec);
    const BigInt total = node_count(spec);
    if (total > kMaxBuildNodes) {
        throw DomainError("refusing to build " + total.get_str() + " nodes for " + to_string(spec) +
                          " (limit " + std::to_string(kMaxBuildNodes) + ")");
    }
    std::vector<Node> nodes;
    nodes.reserve(total.get_ui());
    nodes.push_back(Node{0, 0, std::nullopt, {}});
    // Breadth-first expansion: appending children while scanning yields BFS ids.
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const std::uint64_t count = children_per_node(spec, nodes[k].depth);
        const std::uint64_t child_depth = nodes[k].depth + 1;
        for (std::uint64_t c = 0; c < count; ++c) {
            const NodeId child = nodes.size();
            nodes[k].children.push_back(child);
            nodes.push_back(Node{child, child_depth, k, {}});
        }
    }
    return Tree(std::move(nodes), spec);
}

std::size_t nodes_at_depth(const Tree& tree, std::uint64_t m) { return tree.level(m).size(); }

void validate(const AdjacencyGraph& graph) {
    std::vector<NodeId> sorted = graph.ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidSpec("graph lists a node id twice");
    }
    for (const auto& [u, v] : graph.edges) {
        if (u == v) throw InvalidSpec("self-loop on node " + std::to_string(u));
        if (!std::binary_search(sorted.begin(), sorted.end(), u) ||
            !std::binary_search(sorted.begin(), sorted.end(), v)) {
            throw InvalidSpec("edge " + std::to_string(u) + "-" + std::to_string(v) + " references an unknown node");
        }
    }
}

AdjacencyGraph parse_edge_list(const std::string& text) {
    AdjacencyGraph graph;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() > 2) {
            throw ParseError("edge list line " + std::to_string(line_no) + ": expected 'u v'");
        }
        std::vector<NodeId> ids;
        for (const auto& tok : tokens) ids.push_back(parse_uint(tok, "line " + std::to_string(line_no)));
        graph.ids.insert(graph.ids.end(), ids.begin(), ids.end());
        if (ids.size() == 2) {
            if (ids[0] == ids[1]) {
                throw ParseError("edge list line " + std::to_string(line_no) + ": self-loop");
            }
            graph.edges.emplace_back(ids[0], ids[1]);
        }
    }
    std::sort(graph.ids.begin(), graph.ids.end());
    graph.ids.erase(std::unique(graph.ids.begin(), graph.ids.end()), graph.ids.end());
    return graph;
}

AdjacencyGraph as_graph(const Tree& tree) {
    AdjacencyGraph graph;
    for (const Node& n : tree.nodes()) {
        graph.ids.push_back(n.id);
        if (n.parent) graph.edges.emplace_back(*n.parent, n.id);
    }
    return graph;
}

SpanningTree extract_spanning_tree(const AdjacencyGraph& graph, NodeId root) {
    validate(graph);
    std::vector<NodeId> ids = graph.ids;
    std::sort(ids.begin(), ids.end());
    auto index_of = [&](NodeId original) {
        return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), original) - ids.begin());
    };
    if (!std::binary_search(ids.begin(), ids.end(), root)) {
        throw DomainError("root " + std::to_string(root) + " is not a node of the graph");
    }

    std::vector<std::vector<std::size_t>> adjacency(ids.size());
    for (const auto& [u, v] : graph.edges) {
        adjacency[index_of(u)].push_back(index_of(v));
        adjacency[index_of(v)].push_back(index_of(u));
    }
    for (auto& list : adjacency) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    constexpr auto kUnseen = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> dist(ids.size(), kUnseen);
    const std::size_t root_index = index_of(root);
    dist[root_index] = 0;
    std::deque<std::size_t> frontier{root_index};
    while (!frontier.empty()) {
        const std::size_t u = frontier.front();
        frontier.pop_front();
        for (std::size_t v : adjacency[u]) {
            if (dist[v] == kUnseen) {
                dist[v] = dist[u] + 1;
                frontier.push_back(v);
            }
        }
    }

    std::vector<NodeId> unreachable;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (dist[k] == kUnseen) unreachable.push_back(ids[k]);
    }
    if (!unreachable.empty()) {
        std::string list;
        for (NodeId id : unreachable) list += (list.empty() ? "" : ", ") + std::to_string(id);
        throw DisconnectedGraph("graph is disconnected from root " + std::to_string(root) +
                                    "; unreachable: " + list,
                                std::move(unreachable));
    }

    std::vector<Node> nodes(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) {
        nodes[k].id = k;
        nodes[k].depth = dist[k];
        if (k == root_index) continue;
        // adjacency is sorted, so the first neighbour one level up has the smallest id
        for (std::size_t u : adjacency[k]) {
            if (dist[u] + 1 == dist[k]) {
                nodes[k].parent = u;
                break;
            }
        }
    }
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (nodes[k].parent) nodes[*nodes[k].parent].children.push_back(k);
    }
    return SpanningTree{Tree(std::move(nodes)), std::move(ids)};
}

}  // namespace wsnflood::topology

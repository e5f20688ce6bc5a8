#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sslcl/types.hpp"

namespace sslcl {

/// Unordered pair of adjacent nodes, stored with a < b.
struct EdgeId {
    NodeId a = 0;
    NodeId b = 0;

    EdgeId() = default;
    EdgeId(NodeId u, NodeId v);

    NodeId other(NodeId x) const { return x == a ? b : a; }
    bool touches(NodeId x) const { return x == a || x == b; }

    friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

/// Undirected simple graph with port numbering and a degree bound.
///
/// Node slots are never reused: removing a node marks its slot dead. Port p
/// of node v refers to the p-th entry of v's neighbor list; ports follow the
/// insertion order of edges.
class Graph {
public:
    explicit Graph(int degree_bound = 1, std::size_t node_count = 0);

    /// Builds a graph from an edge list. The node count is the larger of
    /// min_nodes and one past the largest endpoint.
    static Graph build(std::span<const std::pair<NodeId, NodeId>> edges, int degree_bound,
                       std::size_t min_nodes = 0);

    int degree_bound() const { return degree_bound_; }
    void set_degree_bound(int delta);

    std::size_t slot_count() const { return adj_.size(); }
    std::size_t node_count() const { return live_; }
    std::size_t edge_count() const { return edges_; }
    bool alive(NodeId v) const { return v < adj_.size() && alive_[v] != 0; }

    int degree(NodeId v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;
    NodeId neighbor(NodeId v, Port p) const { return adj_[v][p]; }
    std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }
    std::optional<Port> port_to(NodeId v, NodeId u) const;
    bool adjacent(NodeId u, NodeId v) const { return port_to(u, v).has_value(); }

    /// All edges in increasing order.
    std::vector<EdgeId> edges() const;
    std::vector<NodeId> nodes() const;

    NodeId add_node();
    /// Removes v and its incident edges; neighbors' remaining ports keep their order.
    void remove_node(NodeId v);
    void add_edge(NodeId u, NodeId v);
    void remove_edge(NodeId u, NodeId v);
    /// New port p of v is old port perm[p].
    void permute_ports(NodeId v, std::span<const Port> perm);

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    int degree_bound_;
    std::vector<std::vector<NodeId>> adj_;
    std::vector<char> alive_;
    std::size_t live_ = 0;
    std::size_t edges_ = 0;
};

/// Hop distance; std::nullopt stands for infinity.
using Distance = std::optional<std::size_t>;

/// Minimum hop distance from v to the set W.
Distance distance(const Graph& g, NodeId v, std::span<const NodeId> W);

/// Multi-source BFS: distance of every slot to the set W.
std::vector<Distance> distances_from(const Graph& g, std::span<const NodeId> W);

/// L(G) with the bijection between its nodes and the edges of G.
struct LineGraph {
    Graph graph;
    std::vector<EdgeId> edge_of;  ///< node handle of L(G) -> edge of G

    std::optional<NodeId> node_of(EdgeId e) const;
};

/// Node i of L(G) is the i-th edge in increasing order. The ports of {u,v}
/// (u < v) list the other edges at u in u's port order, then those at v.
LineGraph line_graph(const Graph& g);

/// The clone graph G_alpha: node (v,i) has handle v*alpha + i.
struct CloneGraph {
    Graph graph;
    int alpha = 1;

    NodeId handle(NodeId v, int i) const { return v * static_cast<NodeId>(alpha) + static_cast<NodeId>(i); }
    NodeId host(NodeId h) const { return h / static_cast<NodeId>(alpha); }
    int layer(NodeId h) const { return static_cast<int>(h % static_cast<NodeId>(alpha)); }
};

/// Clone (v,i) lists its clique neighbors (v,i') for i' != i in increasing
/// i' first, then (u,i) for u in v's port order.
CloneGraph clone_graph(const Graph& g, int alpha);

}  // namespace sslcl

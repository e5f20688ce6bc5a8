#include "sslcl/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "sslcl/errors.hpp"

namespace sslcl {

EdgeId::EdgeId(NodeId u, NodeId v) : a(std::min(u, v)), b(std::max(u, v)) {
    if (u == v) throw SelfLoop("self-loop at node " + std::to_string(u));
}

Graph::Graph(int degree_bound, std::size_t node_count)
    : degree_bound_(degree_bound), adj_(node_count), alive_(node_count, 1), live_(node_count) {
    if (degree_bound < 1) throw DegreeBoundViolated("degree bound must be positive");
}

Graph Graph::build(std::span<const std::pair<NodeId, NodeId>> edges, int degree_bound,
                   std::size_t min_nodes) {
    std::size_t n = min_nodes;
    for (const auto& [u, v] : edges) n = std::max<std::size_t>(n, std::max(u, v) + std::size_t{1});
    Graph g(degree_bound, n);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::set_degree_bound(int delta) {
    if (delta < 1 || delta < max_degree()) {
        throw DegreeBoundViolated("degree bound " + std::to_string(delta) + " below max degree");
    }
    degree_bound_ = delta;
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

std::optional<Port> Graph::port_to(NodeId v, NodeId u) const {
    const auto& a = adj_[v];
    for (std::size_t p = 0; p < a.size(); ++p) {
        if (a[p] == u) return static_cast<Port>(p);
    }
    return std::nullopt;
}

std::vector<EdgeId> Graph::edges() const {
    std::vector<EdgeId> out;
    out.reserve(edges_);
    for (NodeId v = 0; v < adj_.size(); ++v) {
        for (NodeId u : adj_[v]) {
            if (v < u) out.emplace_back(v, u);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NodeId> Graph::nodes() const {
    std::vector<NodeId> out;
    out.reserve(live_);
    for (NodeId v = 0; v < adj_.size(); ++v) {
        if (alive_[v]) out.push_back(v);
    }
    return out;
}

NodeId Graph::add_node() {
    adj_.emplace_back();
    alive_.push_back(1);
    ++live_;
    return static_cast<NodeId>(adj_.size() - 1);
}

void Graph::remove_node(NodeId v) {
    if (!alive(v)) return;
    for (NodeId u : std::vector<NodeId>(adj_[v])) remove_edge(v, u);
    alive_[v] = 0;
    --live_;
}

void Graph::add_edge(NodeId u, NodeId v) {
    if (u == v) throw SelfLoop("self-loop at node " + std::to_string(u));
    if (!alive(u) || !alive(v)) throw Error("edge endpoint is not a node");
    if (adjacent(u, v)) {
        throw DuplicateEdge("duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    }
    if (degree(u) >= degree_bound_ || degree(v) >= degree_bound_) {
        throw DegreeBoundViolated("edge {" + std::to_string(u) + "," + std::to_string(v) +
                                  "} exceeds degree bound " + std::to_string(degree_bound_));
    }
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++edges_;
}

void Graph::remove_edge(NodeId u, NodeId v) {
    auto pu = port_to(u, v);
    auto pv = port_to(v, u);
    if (!pu || !pv) throw Error("no edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    adj_[u].erase(adj_[u].begin() + *pu);
    adj_[v].erase(adj_[v].begin() + *pv);
    --edges_;
}

void Graph::permute_ports(NodeId v, std::span<const Port> perm) {
    auto& a = adj_[v];
    if (perm.size() != a.size()) throw Error("port permutation has wrong size");
    std::vector<NodeId> next(a.size());
    std::vector<char> seen(a.size(), 0);
    for (std::size_t p = 0; p < perm.size(); ++p) {
        if (perm[p] >= a.size() || seen[perm[p]]) throw Error("not a port permutation");
        seen[perm[p]] = 1;
        next[p] = a[perm[p]];
    }
    a = std::move(next);
}

std::vector<Distance> distances_from(const Graph& g, std::span<const NodeId> W) {
    std::vector<Distance> dist(g.slot_count());
    std::deque<NodeId> queue;
    for (NodeId w : W) {
        if (w < g.slot_count() && g.alive(w) && !dist[w]) {
            dist[w] = 0;
            queue.push_back(w);
        }
    }
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        for (NodeId u : g.neighbors(v)) {
            if (!dist[u]) {
                dist[u] = *dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    return dist;
}

Distance distance(const Graph& g, NodeId v, std::span<const NodeId> W) {
    return distances_from(g, W)[v];
}

std::optional<NodeId> LineGraph::node_of(EdgeId e) const {
    auto it = std::lower_bound(edge_of.begin(), edge_of.end(), e);
    if (it == edge_of.end() || *it != e) return std::nullopt;
    return static_cast<NodeId>(it - edge_of.begin());
}

LineGraph line_graph(const Graph& g) {
    LineGraph lg{Graph(std::max(1, 2 * g.degree_bound() - 2), 0), g.edges()};
    auto index = [&](NodeId u, NodeId v) { return *lg.node_of(EdgeId(u, v)); };
    // Adjacency lists are filled directly so that the port order is the
    // documented one rather than an artifact of edge insertion order.
    std::vector<std::vector<NodeId>> adj(lg.edge_of.size());
    for (std::size_t i = 0; i < lg.edge_of.size(); ++i) {
        const EdgeId e = lg.edge_of[i];
        for (NodeId end : {e.a, e.b}) {
            for (NodeId w : g.neighbors(end)) {
                if (w != e.other(end)) adj[i].push_back(index(end, w));
            }
        }
    }
    Graph out(lg.graph.degree_bound(), lg.edge_of.size());
    // Insert each L(G) edge once, then reorder ports to match adj.
    for (std::size_t i = 0; i < adj.size(); ++i) {
        for (NodeId j : adj[i]) {
            if (i < j) out.add_edge(static_cast<NodeId>(i), j);
        }
    }
    for (NodeId i = 0; i < adj.size(); ++i) {
        std::vector<Port> perm;
        perm.reserve(adj[i].size());
        for (NodeId j : adj[i]) perm.push_back(*out.port_to(i, j));
        out.permute_ports(i, perm);
    }
    lg.graph = std::move(out);
    return lg;
}

CloneGraph clone_graph(const Graph& g, int alpha) {
    if (alpha < 1) throw Error("clone count must be positive");
    CloneGraph cg{Graph(g.degree_bound() + alpha - 1, g.slot_count() * static_cast<std::size_t>(alpha)),
                  alpha};
    const auto n = static_cast<NodeId>(g.slot_count());
    for (NodeId v = 0; v < n; ++v) {
        for (int i = 0; i < alpha; ++i) {
            for (int j = i + 1; j < alpha; ++j) cg.graph.add_edge(cg.handle(v, i), cg.handle(v, j));
        }
    }
    for (const EdgeId& e : g.edges()) {
        for (int i = 0; i < alpha; ++i) cg.graph.add_edge(cg.handle(e.a, i), cg.handle(e.b, i));
    }
    for (NodeId v = 0; v < n; ++v) {
        for (int i = 0; i < alpha; ++i) {
            const NodeId h = cg.handle(v, i);
            std::vector<Port> perm;
            for (int j = 0; j < alpha; ++j) {
                if (j != i) perm.push_back(*cg.graph.port_to(h, cg.handle(v, j)));
            }
            for (NodeId u : g.neighbors(v)) perm.push_back(*cg.graph.port_to(h, cg.handle(u, i)));
            cg.graph.permute_ports(h, perm);
        }
        if (!g.alive(v)) {
            for (int i = 0; i < alpha; ++i) cg.graph.remove_node(cg.handle(v, i));
        }
    }
    return cg;
}

}  // namespace sslcl

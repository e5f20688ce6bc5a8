#include "sslcl/configuration.hpp"

#include <algorithm>

#include "sslcl/errors.hpp"

namespace sslcl {

Configuration Configuration::nodes_bottom(const Graph& g) {
    return Configuration{ElementKind::node, std::vector<Value>(g.slot_count(), kBottom), {}};
}

Configuration Configuration::edges_bottom(const Graph& g) {
    Configuration c{ElementKind::edge, {}, g.edges()};
    c.values.assign(c.edges.size(), kBottom);
    return c;
}

std::size_t Configuration::edge_index(EdgeId e) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) throw Error("edge not in configuration");
    return static_cast<std::size_t>(it - edges.begin());
}

std::vector<std::size_t> domain(const Graph& g, const Configuration& c) {
    std::vector<std::size_t> out;
    if (c.kind == ElementKind::edge) {
        out.resize(c.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
        return out;
    }
    for (std::size_t v = 0; v < c.size(); ++v) {
        if (g.alive(static_cast<NodeId>(v))) out.push_back(v);
    }
    return out;
}

std::vector<std::size_t> decided(const Graph& g, const Configuration& c) {
    std::vector<std::size_t> out;
    for (std::size_t x : domain(g, c)) {
        if (c.values[x] != kBottom) out.push_back(x);
    }
    return out;
}

std::vector<std::size_t> undecided(const Graph& g, const Configuration& c) {
    std::vector<std::size_t> out;
    for (std::size_t x : domain(g, c)) {
        if (c.values[x] == kBottom) out.push_back(x);
    }
    return out;
}

bool is_complete(const Graph& g, const Configuration& c) { return undecided(g, c).empty(); }

std::vector<std::size_t> neighbor_elements(const Graph& g, const Configuration& c, std::size_t x) {
    std::vector<std::size_t> out;
    if (c.kind == ElementKind::node) {
        for (NodeId u : g.neighbors(static_cast<NodeId>(x))) out.push_back(u);
        return out;
    }
    const EdgeId e = c.edges[x];
    for (NodeId end : {e.a, e.b}) {
        for (NodeId w : g.neighbors(end)) {
            if (w != e.other(end)) out.push_back(c.edge_index(EdgeId(end, w)));
        }
    }
    return out;
}

Multiset neighbor_multiset(const Graph& g, const Configuration& c, std::size_t x, int alphabet_size) {
    Multiset m(alphabet_size);
    for (std::size_t y : neighbor_elements(g, c, x)) m.add(c.values[y]);
    return m;
}

}  // namespace sslcl

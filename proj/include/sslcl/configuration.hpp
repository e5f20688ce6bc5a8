#pragma once

#include <cstddef>
#include <vector>

#include "sslcl/graph.hpp"
#include "sslcl/multiset.hpp"
#include "sslcl/types.hpp"

namespace sslcl {

/// Assignment of an output value (or bottom) to every node or every edge.
///
/// Node configurations are indexed by node slot; dead slots are outside the
/// domain. Edge configurations carry their (sorted) edge list and are indexed
/// by position in it.
struct Configuration {
    ElementKind kind = ElementKind::node;
    std::vector<Value> values;
    std::vector<EdgeId> edges;

    static Configuration nodes_bottom(const Graph& g);
    static Configuration edges_bottom(const Graph& g);

    std::size_t size() const { return values.size(); }
    std::size_t edge_index(EdgeId e) const;
    Value edge_value(EdgeId e) const { return values[edge_index(e)]; }

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Element handles in the domain of c (live node slots or edge positions).
std::vector<std::size_t> domain(const Graph& g, const Configuration& c);
std::vector<std::size_t> decided(const Graph& g, const Configuration& c);
std::vector<std::size_t> undecided(const Graph& g, const Configuration& c);
bool is_complete(const Graph& g, const Configuration& c);

/// Neighbor elements of x: adjacent nodes, or edges sharing an endpoint.
std::vector<std::size_t> neighbor_elements(const Graph& g, const Configuration& c, std::size_t x);

/// C[x]: multiset of the decided neighbors' outputs.
Multiset neighbor_multiset(const Graph& g, const Configuration& c, std::size_t x, int alphabet_size);

}  // namespace sslcl

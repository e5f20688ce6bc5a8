#pragma once

#include <functional>
#include <string>

#include "sslcl/configuration.hpp"
#include "sslcl/graph.hpp"
#include "sslcl/multiset.hpp"

namespace sslcl {

/// Locally separable potential. Node kind sums sigma(C[u], C[v]) over edges
/// whose endpoints are both undecided; edge kind sums sigma(C[e]) over
/// undecided edges.
struct PotentialSpec {
    std::string name;
    ElementKind kind = ElementKind::node;
    int alphabet_size = 1;
    std::function<long long(const Multiset&, const Multiset&)> pair_coefficient;
    std::function<long long(const Multiset&)> edge_coefficient;
    long long top = 0;

    long long sigma(const Multiset& m, const Multiset& m2) const { return pair_coefficient(m, m2); }
    long long sigma(const Multiset& m) const { return edge_coefficient(m); }
};

long long potential(const PotentialSpec& p, const Graph& g, const Configuration& c);

/// Names: mis, coloring, incremental-coloring (needs c), mm, edge-coloring.
/// `param` is c for incremental coloring and the palette size for colorings.
PotentialSpec builtin_potential(const std::string& name, int param = 0);

}  // namespace sslcl

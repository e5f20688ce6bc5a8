#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "sslcl/graph.hpp"

namespace sslcl {

using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

/// Parses "u v" pairs, one per line. Blank lines and lines starting with '#'
/// are skipped.
EdgeList parse_edge_list(std::istream& in);
EdgeList read_edge_list(const std::string& path);

Graph make_cycle(std::size_t n, int degree_bound = 2);
Graph make_path(std::size_t n, int degree_bound = 2);
Graph make_grid(std::size_t rows, std::size_t cols, int degree_bound = 4);
Graph make_star(std::size_t leaves, int degree_bound = 0);
Graph make_complete(std::size_t n, int degree_bound = 0);

/// G(n,p) restricted to max degree delta: candidate pairs are visited in
/// lexicographic order and an edge is kept with probability p unless it would
/// exceed the bound.
Graph make_random_bounded(std::size_t n, double p, int delta, std::uint64_t seed);

}  // namespace sslcl

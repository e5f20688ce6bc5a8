#include "sslcl/generators.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sslcl/errors.hpp"
#include "sslcl/rng.hpp"

namespace sslcl {

EdgeList parse_edge_list(std::istream& in) {
    EdgeList edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        long long u = -1;
        long long v = -1;
        std::string rest;
        if (!(fields >> u >> v) || u < 0 || v < 0 || (fields >> rest)) {
            throw ConfigError("malformed edge on line " + std::to_string(line_no) + ": " + line);
        }
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    return edges;
}

EdgeList read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open edge list " + path);
    return parse_edge_list(in);
}

Graph make_cycle(std::size_t n, int degree_bound) {
    if (n < 3) throw ConfigError("a cycle needs at least 3 nodes");
    EdgeList e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::build(e, degree_bound, n);
}

Graph make_path(std::size_t n, int degree_bound) {
    EdgeList e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::build(e, degree_bound, n);
}

Graph make_grid(std::size_t rows, std::size_t cols, int degree_bound) {
    EdgeList e;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const auto v = static_cast<NodeId>(r * cols + c);
            if (c + 1 < cols) e.emplace_back(v, v + 1);
            if (r + 1 < rows) e.emplace_back(v, v + cols);
        }
    }
    return Graph::build(e, degree_bound, rows * cols);
}

Graph make_star(std::size_t leaves, int degree_bound) {
    EdgeList e;
    for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    const int delta = degree_bound > 0 ? degree_bound : std::max<int>(1, static_cast<int>(leaves));
    return Graph::build(e, delta, leaves + 1);
}

Graph make_complete(std::size_t n, int degree_bound) {
    EdgeList e;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
    }
    const int delta = degree_bound > 0 ? degree_bound : std::max<int>(1, static_cast<int>(n) - 1);
    return Graph::build(e, delta, n);
}

Graph make_random_bounded(std::size_t n, double p, int delta, std::uint64_t seed) {
    Graph g(delta, n);
    Rng rng(seed, 0, "graph");
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (!rng.bernoulli(p)) continue;
            if (g.degree(u) < delta && g.degree(v) < delta) g.add_edge(u, v);
        }
    }
    return g;
}

}  // namespace sslcl

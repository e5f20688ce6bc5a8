#include "sslcl/potential.hpp"

#include <algorithm>

#include "sslcl/errors.hpp"

namespace sslcl {

long long potential(const PotentialSpec& p, const Graph& g, const Configuration& c) {
    if (p.kind != c.kind) throw KindMismatch("potential kind does not match configuration kind");
    long long total = 0;
    if (c.kind == ElementKind::node) {
        for (NodeId v : g.nodes()) {
            if (c.values[v] != kBottom) continue;
            Multiset mv;
            bool have_mv = false;
            for (NodeId u : g.neighbors(v)) {
                if (u < v || c.values[u] != kBottom) continue;
                if (!have_mv) {
                    mv = neighbor_multiset(g, c, v, p.alphabet_size);
                    have_mv = true;
                }
                total += p.sigma(mv, neighbor_multiset(g, c, u, p.alphabet_size));
            }
        }
        return total;
    }
    for (std::size_t e = 0; e < c.size(); ++e) {
        if (c.values[e] == kBottom) total += p.sigma(neighbor_multiset(g, c, e, p.alphabet_size));
    }
    return total;
}

PotentialSpec builtin_potential(const std::string& name, int param) {
    PotentialSpec p;
    p.name = name;
    if (name == "mis") {
        p.kind = ElementKind::node;
        p.alphabet_size = 2;
        p.pair_coefficient = [](const Multiset& a, const Multiset& b) -> long long {
            return (a.contains(1) || b.contains(1)) ? 1 : 2;
        };
        p.top = 2;
    } else if (name == "coloring") {
        p.kind = ElementKind::node;
        p.alphabet_size = std::max(1, param);
        p.pair_coefficient = [](const Multiset&, const Multiset&) -> long long { return 1; };
        p.top = 1;
    } else if (name == "incremental-coloring") {
        if (param < 2) throw ConfigError("incremental coloring needs c >= 2");
        const int c = param;
        p.kind = ElementKind::node;
        p.alphabet_size = c;
        auto deficit = [c](const Multiset& m) -> long long {
            long long low = 0;
            for (Value j = 1; j < c; ++j) low += m.count(j);
            return std::max<long long>(0, c - 1 - low);
        };
        p.pair_coefficient = [c, deficit](const Multiset& a, const Multiset& b) -> long long {
            return c + deficit(a) + deficit(b);
        };
        p.top = 3LL * c - 2;
    } else if (name == "mm") {
        p.kind = ElementKind::edge;
        p.alphabet_size = 2;
        p.edge_coefficient = [](const Multiset& m) -> long long { return m.contains(1) ? 1 : 2; };
        p.top = 2;
    } else if (name == "edge-coloring") {
        p.kind = ElementKind::edge;
        p.alphabet_size = std::max(1, param);
        p.edge_coefficient = [](const Multiset&) -> long long { return 1; };
        p.top = 1;
    } else {
        throw UnknownProblem("no builtin potential named '" + name + "'");
    }
    return p;
}

}  // namespace sslcl

#include "sslcl/adversary.hpp"

#include <algorithm>

#include "sslcl/errors.hpp"
#include "sslcl/rng.hpp"

namespace sslcl {

std::string to_string(AdversaryAction::Kind kind) {
    switch (kind) {
        case AdversaryAction::Kind::corrupt: return "corrupt";
        case AdversaryAction::Kind::rewire: return "rewire";
        case AdversaryAction::Kind::add_node: return "add-node";
        case AdversaryAction::Kind::remove_node: return "remove-node";
        case AdversaryAction::Kind::add_edge: return "add-edge";
        case AdversaryAction::Kind::remove_edge: return "remove-edge";
    }
    return "?";
}

AdversaryAction::Kind parse_action_kind(const std::string& name) {
    for (auto k : {AdversaryAction::Kind::corrupt, AdversaryAction::Kind::rewire, AdversaryAction::Kind::add_node,
                   AdversaryAction::Kind::remove_node, AdversaryAction::Kind::add_edge,
                   AdversaryAction::Kind::remove_edge}) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("unknown adversary action '" + name + "'");
}

std::vector<NodeId> manipulated_nodes(const AdversaryAction& a, const Graph& before) {
    using K = AdversaryAction::Kind;
    switch (a.kind) {
        case K::corrupt:
        case K::rewire: return {a.node};
        case K::add_node: {
            std::vector<NodeId> out(a.attach);
            out.push_back(static_cast<NodeId>(before.slot_count()));
            return out;
        }
        case K::remove_node: {
            auto nb = before.neighbors(a.node);
            return {nb.begin(), nb.end()};
        }
        case K::add_edge:
        case K::remove_edge: return {a.node, a.other};
    }
    return {};
}

std::vector<AdversaryAction> random_fault_schedule(const Graph& g, int k, int batches,
                                                   const std::vector<std::string>& kinds, std::uint64_t seed,
                                                   long long first_round, int gap) {
    if (k < 1) throw ConfigError("k must be positive");
    if (batches < 1) throw ConfigError("batches must be positive");
    if (static_cast<std::size_t>(k) > g.node_count()) {
        throw KTooLarge("k=" + std::to_string(k) + " exceeds the node count " + std::to_string(g.node_count()));
    }
    batches = std::min(batches, k);
    std::vector<std::string> allowed = kinds.empty() ? std::vector<std::string>{"corrupt"} : kinds;
    for (const auto& kind : allowed) {
        if (kind != "corrupt" && kind != "rewire" && kind != "edge") {
            throw ConfigError("unsupported fault kind '" + kind + "'");
        }
    }
    Rng rng(seed, 0, "schedule");
    std::vector<NodeId> pool = g.nodes();
    for (int i = 0; i < k; ++i) {
        const auto j = static_cast<std::size_t>(i) + rng.below(pool.size() - static_cast<std::size_t>(i));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(k));

    Graph shadow = g;
    std::vector<AdversaryAction> out;
    std::size_t next = 0;
    for (int b = 0; b < batches; ++b) {
        const long long round = first_round + static_cast<long long>(b) * gap;
        const std::size_t size = static_cast<std::size_t>(k / batches + (b < k % batches ? 1 : 0));
        std::vector<NodeId> batch(pool.begin() + static_cast<long>(next), pool.begin() + static_cast<long>(next + size));
        next += size;
        std::size_t i = 0;
        while (i < batch.size()) {
            const std::string& kind = allowed[rng.below(allowed.size())];
            AdversaryAction a;
            a.round = round;
            a.node = batch[i];
            if (kind == "edge" && i + 1 < batch.size()) {
                const NodeId u = batch[i];
                const NodeId v = batch[i + 1];
                a.other = v;
                if (shadow.adjacent(u, v)) {
                    a.kind = AdversaryAction::Kind::remove_edge;
                    shadow.remove_edge(u, v);
                    out.push_back(a);
                } else if (shadow.degree(u) < shadow.degree_bound() && shadow.degree(v) < shadow.degree_bound()) {
                    a.kind = AdversaryAction::Kind::add_edge;
                    shadow.add_edge(u, v);
                    out.push_back(a);
                } else {
                    a.kind = AdversaryAction::Kind::corrupt;
                    out.push_back(a);
                    a.node = v;
                    out.push_back(a);
                }
                i += 2;
                continue;
            }
            a.kind = kind == "rewire" ? AdversaryAction::Kind::rewire : AdversaryAction::Kind::corrupt;
            out.push_back(a);
            ++i;
        }
    }
    return out;
}

}  // namespace sslcl

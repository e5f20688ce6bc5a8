#pragma once

#include <optional>
#include <vector>

#include "sslcl/configuration.hpp"
#include "sslcl/edge_phases.hpp"
#include "sslcl/graph.hpp"
#include "sslcl/node_phases.hpp"
#include "sslcl/rng.hpp"

namespace sslcl {

/// One fault-free, globally synchronized phase of a node phase procedure.
/// Every undecided node takes part and its phase neighbors are its undecided
/// neighbors. Node v draws from Rng(seed, v, "phase"), so a sequence of calls
/// with persistent streams matches the transformed algorithm under forced
/// phase starts.
template <class Phase>
class NodePhaseRunner {
public:
    NodePhaseRunner(Phase phase, const Graph& g, std::uint64_t seed) : phase_(std::move(phase)) {
        for (NodeId v = 0; v < g.slot_count(); ++v) rngs_.emplace_back(seed, v, "phase");
    }

    Configuration run(const Graph& g, const Configuration& c) {
        using Payload = typename Phase::Payload;
        const auto n = g.slot_count();
        std::vector<std::vector<Port>> s_ports(n);
        std::vector<unsigned char> active(n, 0);
        for (NodeId v = 0; v < n; ++v) {
            if (!g.alive(v) || c.values[v] != kBottom) continue;
            active[v] = 1;
            for (Port p = 0; p < static_cast<Port>(g.degree(v)); ++p) {
                if (c.values[g.neighbor(v, p)] == kBottom) s_ports[v].push_back(p);
            }
        }
        // slot[v][k]: index of v inside the S list of its k-th phase neighbor
        std::vector<std::vector<std::size_t>> slot(n);
        for (NodeId v = 0; v < n; ++v) {
            for (Port p : s_ports[v]) {
                const NodeId u = g.neighbor(v, p);
                const Port back = *g.port_to(u, v);
                const auto& su = s_ports[u];
                slot[v].push_back(static_cast<std::size_t>(std::lower_bound(su.begin(), su.end(), back) - su.begin()));
            }
        }
        std::vector<typename Phase::Regs> regs(n);
        std::vector<std::vector<Payload>> sent(n);
        std::vector<std::vector<Payload>> next(n);
        std::vector<unsigned char> has_sent(n, 0);
        Configuration result = c;
        for (int step = 1; step < Phase::length; ++step) {
            for (NodeId v = 0; v < n; ++v) {
                if (!active[v]) continue;
                std::vector<const Payload*> inbox(s_ports[v].size(), nullptr);
                if (step > 1) {
                    for (std::size_t k = 0; k < s_ports[v].size(); ++k) {
                        const NodeId u = g.neighbor(v, s_ports[v][k]);
                        inbox[k] = &sent[u][slot[v][k]];
                    }
                }
                const PhaseView view{static_cast<int>(s_ports[v].size()), g.degree_bound()};
                if (step < Phase::length - 1) {
                    next[v].assign(s_ports[v].size(), Payload{});
                    phase_.work(step, regs[v], view, inbox, next[v], rngs_[v]);
                } else {
                    const auto summary = phase_.summarize(regs[v], view, inbox);
                    Multiset decided(phase_.alphabet_size());
                    for (NodeId u : g.neighbors(v)) {
                        if (c.values[u] != kBottom) decided.add(c.values[u]);
                    }
                    result.values[v] = phase_.decide(summary, decided);
                }
            }
            std::swap(sent, next);
        }
        return result;
    }

private:
    Phase phase_;
    std::vector<Rng> rngs_;
};

/// One fault-free, globally synchronized phase of an edge phase procedure.
/// Every node runs the procedure with the ports of its undecided edges as S.
/// Decisions must agree at both endpoints; disagreements are counted and the
/// edge is left undecided.
template <class Phase>
class EdgePhaseRunner {
public:
    EdgePhaseRunner(Phase phase, const Graph& g, std::uint64_t seed) : phase_(std::move(phase)) {
        for (NodeId v = 0; v < g.slot_count(); ++v) rngs_.emplace_back(seed, v, "phase");
    }

    std::size_t disagreements() const { return disagreements_; }

    Configuration run(const Graph& g, const Configuration& c) {
        using Payload = typename Phase::Payload;
        const auto n = g.slot_count();
        std::vector<std::vector<Value>> out(n);
        std::vector<std::vector<Port>> s_ports(n);
        for (NodeId v = 0; v < n; ++v) {
            if (!g.alive(v)) continue;
            for (Port p = 0; p < static_cast<Port>(g.degree(v)); ++p) {
                const Value x = c.edge_value(EdgeId(v, g.neighbor(v, p)));
                out[v].push_back(x);
                if (x == kBottom) s_ports[v].push_back(p);
            }
        }
        std::vector<std::vector<std::size_t>> slot(n);
        for (NodeId v = 0; v < n; ++v) {
            for (Port p : s_ports[v]) {
                const NodeId u = g.neighbor(v, p);
                const Port back = *g.port_to(u, v);
                const auto& su = s_ports[u];
                slot[v].push_back(static_cast<std::size_t>(std::lower_bound(su.begin(), su.end(), back) - su.begin()));
            }
        }
        std::vector<typename Phase::Regs> regs(n);
        std::vector<std::vector<std::optional<Payload>>> sent(n);
        std::vector<std::vector<std::optional<Payload>>> next(n);
        std::vector<std::vector<Value>> decision(n);
        for (int step = 1; step < Phase::length; ++step) {
            for (NodeId v = 0; v < n; ++v) {
                if (!g.alive(v)) continue;
                std::vector<const Payload*> inbox(s_ports[v].size(), nullptr);
                if (step > 1) {
                    for (std::size_t k = 0; k < s_ports[v].size(); ++k) {
                        const auto& m = sent[g.neighbor(v, s_ports[v][k])][slot[v][k]];
                        if (m) inbox[k] = &*m;
                    }
                }
                const EdgePhaseView view{s_ports[v], out[v], g.degree_bound()};
                if (step < Phase::length - 1) {
                    next[v].assign(s_ports[v].size(), std::nullopt);
                    phase_.work(step, regs[v], view, inbox, next[v], rngs_[v]);
                } else {
                    decision[v].assign(s_ports[v].size(), kBottom);
                    phase_.decide(regs[v], view, inbox, decision[v]);
                }
            }
            std::swap(sent, next);
        }
        Configuration result = c;
        for (NodeId v = 0; v < n; ++v) {
            for (std::size_t k = 0; k < s_ports[v].size(); ++k) {
                const NodeId u = g.neighbor(v, s_ports[v][k]);
                if (u < v) continue;
                const Value mine = decision[v][k];
                const Value theirs = decision[u][slot[v][k]];
                if (mine != theirs) {
                    ++disagreements_;
                    continue;
                }
                result.values[result.edge_index(EdgeId(v, u))] = mine;
            }
        }
        return result;
    }

private:
    Phase phase_;
    std::vector<Rng> rngs_;
    std::size_t disagreements_ = 0;
};

}  // namespace sslcl

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "sslcl/adversary.hpp"
#include "sslcl/errors.hpp"
#include "sslcl/graph.hpp"
#include "sslcl/rng.hpp"

namespace sslcl {

/// Options that only tests use.
struct TestHooks {
    /// hbar always exits to step 0 and line-graph roles are fixed (the lower
    /// node handle becomes x). Breaks anonymity on purpose.
    bool forced_start = false;
};

/// Seed material for a node's own random streams.
struct StateSeed {
    std::uint64_t master = 0;
    NodeId handle = 0;
    int degree = 0;
};

/// Services the engine offers for simulated elements.
class ElementServices {
public:
    virtual ~ElementServices() = default;
    virtual Rng& element_rng(NodeId v, Port p, int clone) = 0;
    virtual bool lower_endpoint(NodeId v, Port p) const = 0;
};

/// Everything a node program may look at besides its registers and inbox.
/// The node handle is private to the engine.
class RoundContext {
public:
    int degree = 0;
    int delta = 0;

    bool forced_start() const { return hooks_ != nullptr && hooks_->forced_start; }

    /// Coin stream of the simulated element (edge at port p, clone i). Shared
    /// by both endpoints so whichever endpoint acts for the element draws
    /// from the same stream.
    Rng& element_rng(Port p, int clone) { return services_->element_rng(node_, p, clone); }

    /// Test hook: whether this node has the smaller handle on the edge at p.
    bool lower_endpoint(Port p) const { return services_->lower_endpoint(node_, p); }

private:
    template <class>
    friend class Network;

    NodeId node_ = 0;
    ElementServices* services_ = nullptr;
    const TestHooks* hooks_ = nullptr;
};

/// Synchronous executor for a node program.
///
/// Algo provides State and Message types and:
///   State make_state(const StateSeed&) const
///   void compute(State&, RoundContext&, std::span<const Message>, std::span<Message>) const
///   void corrupt(State&, int degree, unsigned mask, Rng&) const
///   Message random_message(int degree, Rng&) const
///   void remove_port(State&, Port) const
///   void add_port(State&, Rng&) const
///   void reseed(State&, const StateSeed&) const
template <class Algo>
class Network : private ElementServices {
public:
    using State = typename Algo::State;
    using Message = typename Algo::Message;

    Network(Graph g, Algo algo, std::uint64_t seed, int element_clones = 1)
        : graph_(std::move(g)),
          algo_(std::move(algo)),
          seed_(seed),
          clones_(element_clones),
          adversary_rng_(seed, 0, "adversary") {
        const auto n = graph_.slot_count();
        states_.reserve(n);
        for (NodeId v = 0; v < n; ++v) states_.push_back(algo_.make_state({seed_, v, graph_.degree(v)}));
        inbox_.resize(n);
        outbox_.resize(n);
        for (NodeId v = 0; v < n; ++v) {
            inbox_[v].assign(static_cast<std::size_t>(graph_.degree(v)), Message{});
            outbox_[v].assign(static_cast<std::size_t>(graph_.degree(v)), Message{});
        }
        const auto edges = graph_.edges();
        for (std::size_t i = 0; i < edges.size(); ++i) edge_handles_[edges[i]] = i;
        next_edge_handle_ = edges.size();
        rebuild_back_ports();
    }

    const Graph& graph() const { return graph_; }
    const Algo& algorithm() const { return algo_; }
    Algo& algorithm() { return algo_; }
    long long time() const { return time_; }
    State& state(NodeId v) { return states_[v]; }
    const State& state(NodeId v) const { return states_[v]; }
    std::vector<Message>& inbox(NodeId v) { return inbox_[v]; }
    const std::vector<Message>& inbox(NodeId v) const { return inbox_[v]; }
    TestHooks& hooks() { return hooks_; }

    /// Local computation at every node, then delivery.
    void run_round() {
        RoundContext ctx;
        ctx.delta = graph_.degree_bound();
        ctx.hooks_ = &hooks_;
        ctx.services_ = this;
        for (NodeId v = 0; v < graph_.slot_count(); ++v) {
            if (!graph_.alive(v)) continue;
            ctx.degree = graph_.degree(v);
            ctx.node_ = v;
            algo_.compute(states_[v], ctx, std::span<const Message>(inbox_[v]), std::span<Message>(outbox_[v]));
        }
        for (NodeId v = 0; v < graph_.slot_count(); ++v) {
            if (!graph_.alive(v)) continue;
            for (Port p = 0; p < outbox_[v].size(); ++p) {
                std::swap(inbox_[graph_.neighbor(v, p)][back_[v][p]], outbox_[v][p]);
            }
        }
        ++time_;
    }

    /// Applies one adversary action. Time is not advanced.
    void apply(const AdversaryAction& a) {
        using K = AdversaryAction::Kind;
        switch (a.kind) {
            case K::corrupt: {
                algo_.corrupt(states_[a.node], graph_.degree(a.node), a.registers, adversary_rng_);
                if (a.registers & reg_inbox) {
                    for (auto& m : inbox_[a.node]) m = algo_.random_message(graph_.degree(a.node), adversary_rng_);
                }
                break;
            }
            case K::rewire: {
                std::vector<Port> perm = a.permutation;
                const auto d = static_cast<Port>(graph_.degree(a.node));
                if (perm.empty()) {
                    perm.resize(d);
                    for (Port p = 0; p < d; ++p) perm[p] = p;
                    for (Port p = d; p > 1; --p) std::swap(perm[p - 1], perm[adversary_rng_.below(p)]);
                }
                graph_.permute_ports(a.node, perm);
                std::vector<Message> permuted(inbox_[a.node].size());
                for (Port p = 0; p < d; ++p) permuted[p] = inbox_[a.node][perm[p]];
                inbox_[a.node] = std::move(permuted);
                break;
            }
            case K::add_node: {
                const NodeId v = graph_.add_node();
                states_.push_back(algo_.make_state({seed_, v, 0}));
                inbox_.emplace_back();
                outbox_.emplace_back();
                for (NodeId u : a.attach) connect(v, u);
                break;
            }
            case K::remove_node: {
                for (NodeId u : std::vector<NodeId>(graph_.neighbors(a.node).begin(), graph_.neighbors(a.node).end())) {
                    disconnect(a.node, u);
                }
                graph_.remove_node(a.node);
                break;
            }
            case K::add_edge: connect(a.node, a.other); break;
            case K::remove_edge: disconnect(a.node, a.other); break;
        }
        rebuild_back_ports();
    }

    /// Replaces every random stream (node coins, element coins, adversary)
    /// with streams derived from a new master seed. Registers are kept.
    void reseed(std::uint64_t seed) {
        seed_ = seed;
        adversary_rng_ = Rng(seed_, 0, "adversary");
        element_rngs_.clear();
        for (NodeId v = 0; v < graph_.slot_count(); ++v) algo_.reseed(states_[v], {seed_, v, graph_.degree(v)});
    }

    /// Corrupts every register and every inbox slot of every node.
    void randomize_all() {
        for (NodeId v = 0; v < graph_.slot_count(); ++v) {
            if (!graph_.alive(v)) continue;
            algo_.corrupt(states_[v], graph_.degree(v), reg_all, adversary_rng_);
            for (auto& m : inbox_[v]) m = algo_.random_message(graph_.degree(v), adversary_rng_);
        }
    }

private:
    Rng& element_rng(NodeId v, Port p, int clone) override {
        const EdgeId e(v, graph_.neighbor(v, p));
        const auto key = std::make_pair(e, clone);
        auto it = element_rngs_.find(key);
        if (it == element_rngs_.end()) {
            auto h = edge_handles_.find(e);
            if (h == edge_handles_.end()) h = edge_handles_.emplace(e, next_edge_handle_++).first;
            const std::uint64_t sim_handle =
                h->second * static_cast<std::uint64_t>(clones_) + static_cast<std::uint64_t>(clone);
            it = element_rngs_.emplace(key, Rng(seed_, sim_handle, "phase")).first;
        }
        return it->second;
    }

    bool lower_endpoint(NodeId v, Port p) const override { return v < graph_.neighbor(v, p); }

    void connect(NodeId u, NodeId v) {
        graph_.add_edge(u, v);
        for (NodeId x : {u, v}) {
            algo_.add_port(states_[x], adversary_rng_);
            inbox_[x].push_back(algo_.random_message(graph_.degree(x), adversary_rng_));
            outbox_[x].emplace_back();
        }
    }

    void disconnect(NodeId u, NodeId v) {
        const Port pu = *graph_.port_to(u, v);
        const Port pv = *graph_.port_to(v, u);
        graph_.remove_edge(u, v);
        algo_.remove_port(states_[u], pu);
        algo_.remove_port(states_[v], pv);
        inbox_[u].erase(inbox_[u].begin() + pu);
        inbox_[v].erase(inbox_[v].begin() + pv);
        outbox_[u].erase(outbox_[u].begin() + pu);
        outbox_[v].erase(outbox_[v].begin() + pv);
    }

    void rebuild_back_ports() {
        back_.assign(graph_.slot_count(), {});
        for (NodeId v = 0; v < graph_.slot_count(); ++v) {
            for (NodeId u : graph_.neighbors(v)) back_[v].push_back(*graph_.port_to(u, v));
        }
    }

    Graph graph_;
    Algo algo_;
    std::uint64_t seed_;
    int clones_;
    Rng adversary_rng_;
    TestHooks hooks_;
    std::vector<State> states_;
    std::vector<std::vector<Message>> inbox_;
    std::vector<std::vector<Message>> outbox_;
    std::vector<std::vector<Port>> back_;
    std::map<EdgeId, std::uint64_t> edge_handles_;
    std::uint64_t next_edge_handle_ = 0;
    std::map<std::pair<EdgeId, int>, Rng> element_rngs_;
    long long time_ = 0;
};

}  // namespace sslcl

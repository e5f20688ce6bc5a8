#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sslcl/clone_simulation.hpp"
#include "sslcl/line_simulation.hpp"
#include "sslcl/network.hpp"
#include "sslcl/registry.hpp"
#include "sslcl/simulation.hpp"

namespace sslcl {

/// Simulation backed by a Network of a concrete algorithm.
template <class Algo>
class NetworkSimulation final : public Simulation {
public:
    NetworkSimulation(Graph g, Algo algo, std::uint64_t seed, Layer layer, int alpha)
        : net_(std::move(g), std::move(algo), seed, layer == Layer::line ? alpha : 1), layer_(layer), alpha_(alpha) {}

    Network<Algo>& network() { return net_; }

    void run_round() override { net_.run_round(); }
    void apply(const AdversaryAction& a) override {
        net_.apply(a);
        if (a.kind != AdversaryAction::Kind::corrupt) edge_ports_.reset();
        if (a.kind != AdversaryAction::Kind::corrupt && a.kind != AdversaryAction::Kind::rewire) inner_.reset();
    }
    void reseed(std::uint64_t seed) override { net_.reseed(seed); }
    void randomize_all() override { net_.randomize_all(); }
    long long time() const override { return net_.time(); }
    const Graph& graph() const override { return net_.graph(); }
    TestHooks& hooks() override { return net_.hooks(); }

    Configuration configuration() const override {
        const Graph& g = net_.graph();
        const Algo& algo = net_.algorithm();
        if constexpr (Algo::output_kind == ElementKind::node) {
            Configuration c = Configuration::nodes_bottom(g);
            for (NodeId v = 0; v < g.slot_count(); ++v) {
                if (g.alive(v)) c.values[v] = algo.output(net_.state(v), 0);
            }
            return c;
        } else {
            const auto& ep = edge_ports();
            Configuration c;
            c.kind = ElementKind::edge;
            c.edges = ep.edges;
            c.values.resize(ep.edges.size());
            for (std::size_t k = 0; k < ep.edges.size(); ++k) {
                const Value x = algo.output(net_.state(ep.edges[k].a), ep.ports[k].first);
                const Value y = algo.output(net_.state(ep.edges[k].b), ep.ports[k].second);
                c.values[k] = x == y ? x : kBottom;
            }
            return c;
        }
    }

    std::size_t port_inconsistent_edges() const override {
        if constexpr (Algo::output_kind == ElementKind::node) {
            return 0;
        } else {
            const auto& ep = edge_ports();
            std::size_t count = 0;
            for (std::size_t k = 0; k < ep.edges.size(); ++k) {
                count += net_.algorithm().output(net_.state(ep.edges[k].a), ep.ports[k].first) !=
                         net_.algorithm().output(net_.state(ep.edges[k].b), ep.ports[k].second);
            }
            return count;
        }
    }

    const Graph& inner_graph() override {
        if (layer_ == Layer::direct) return net_.graph();
        if (!inner_) {
            if (layer_ == Layer::clones) {
                inner_ = clone_graph(net_.graph(), alpha_).graph;
            } else {
                inner_ = clone_graph(line_graph(net_.graph()).graph, alpha_).graph;
            }
        }
        return *inner_;
    }

    Configuration inner_configuration() const override {
        const Graph& g = net_.graph();
        const Algo& algo = net_.algorithm();
        const auto a = static_cast<std::size_t>(alpha_);
        if constexpr (requires(const Algo& x, const typename Algo::State& s) { x.clone_output(s, Port{0}, 0); }) {
            if constexpr (Algo::output_kind == ElementKind::node) {
                Configuration c;
                c.kind = ElementKind::node;
                c.values.assign(g.slot_count() * a, kBottom);
                for (NodeId v = 0; v < g.slot_count(); ++v) {
                    if (!g.alive(v)) continue;
                    for (std::size_t i = 0; i < a; ++i) {
                        c.values[v * a + i] = algo.clone_output(net_.state(v), 0, static_cast<int>(i));
                    }
                }
                return c;
            } else {
                const auto& ep = edge_ports();
                Configuration c;
                c.kind = ElementKind::node;
                c.values.assign(ep.edges.size() * a, kBottom);
                for (std::size_t k = 0; k < ep.edges.size(); ++k) {
                    const NodeId u = ep.edges[k].a;
                    const NodeId v = ep.edges[k].b;
                    const auto [pu, pv] = ep.ports[k];
                    for (std::size_t i = 0; i < a; ++i) {
                        const Value x = algo.clone_output(net_.state(u), pu, static_cast<int>(i));
                        const Value y = algo.clone_output(net_.state(v), pv, static_cast<int>(i));
                        c.values[k * a + i] = x == y ? x : kBottom;
                    }
                }
                return c;
            }
        } else {
            return configuration();
        }
    }

    std::unique_ptr<Simulation> copy() const override { return std::make_unique<NetworkSimulation>(*this); }

private:
    struct EdgePorts {
        std::vector<EdgeId> edges;
        std::vector<std::pair<Port, Port>> ports;
    };

    /// Sorted edge list with the port of each endpoint, rebuilt after
    /// topology or port changes.
    const EdgePorts& edge_ports() const {
        if (!edge_ports_) {
            const Graph& g = net_.graph();
            EdgePorts ep;
            ep.edges = g.edges();
            ep.ports.reserve(ep.edges.size());
            for (const EdgeId& e : ep.edges) ep.ports.emplace_back(*g.port_to(e.a, e.b), *g.port_to(e.b, e.a));
            edge_ports_ = std::move(ep);
        }
        return *edge_ports_;
    }

    Network<Algo> net_;
    Layer layer_;
    int alpha_;
    std::optional<Graph> inner_;
    mutable std::optional<EdgePorts> edge_ports_;
};

}  // namespace sslcl

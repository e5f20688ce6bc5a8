#include "sslcl/registry.hpp"

#include <cmath>

#include "sslcl/edge_transformer.hpp"
#include "sslcl/errors.hpp"
#include "sslcl/node_transformer.hpp"
#include "sslcl/phase_runner.hpp"
#include "sslcl/simulation_impl.hpp"

namespace sslcl {

namespace {

template <class Runner>
class PhaseRunnerImpl final : public PhaseRunner {
public:
    explicit PhaseRunnerImpl(Runner r) : runner_(std::move(r)) {}
    Configuration run(const Graph& g, const Configuration& c) override { return runner_.run(g, c); }
    std::size_t disagreements() const override {
        if constexpr (requires(const Runner& r) { r.disagreements(); }) {
            return runner_.disagreements();
        } else {
            return 0;
        }
    }

private:
    Runner runner_;
};

template <class Phase>
auto node_runner(Phase phase) {
    return [phase](const Graph& g, std::uint64_t seed) -> std::unique_ptr<PhaseRunner> {
        return std::make_unique<PhaseRunnerImpl<NodePhaseRunner<Phase>>>(NodePhaseRunner<Phase>(phase, g, seed));
    };
}

template <class Phase>
auto edge_runner(Phase phase) {
    return [phase](const Graph& g, std::uint64_t seed) -> std::unique_ptr<PhaseRunner> {
        return std::make_unique<PhaseRunnerImpl<EdgePhaseRunner<Phase>>>(EdgePhaseRunner<Phase>(phase, g, seed));
    };
}

template <class Algo>
auto simulation(Algo algo, Layer layer, int alpha) {
    return [algo, layer, alpha](Graph g, std::uint64_t seed) -> std::unique_ptr<Simulation> {
        return std::make_unique<NetworkSimulation<Algo>>(std::move(g), algo, seed, layer, alpha);
    };
}

int param_c(const ProblemParams& params, int lo, int hi, const std::string& name) {
    const int c = params.c.value_or(3);
    if (c < lo || c > hi) {
        throw ConfigError(name + ": c must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "], got " + std::to_string(c));
    }
    return c;
}

void finish(Problem& p) {
    if (p.inner_phi < 2) throw InvalidPhaseStructure(p.name + ": phase length below 2");
    const bool edge = p.layer == Layer::direct && p.kind == ElementKind::edge;
    if (p.layer == Layer::line) {
        p.host_phi = 2 * p.inner_phi;
        p.strong_offset = p.nu + 2 * p.inner_phi + 3;
        p.locality_radius = p.nu + 2 * p.inner_phi + 1;
    } else {
        p.host_phi = p.inner_phi;
        p.strong_offset = p.nu + p.inner_phi + (edge ? 3 : 2);
        p.locality_radius = p.nu + p.inner_phi + 1;
    }
    p.confirm_window = 2 * p.host_phi + 2;
    const int alpha = p.alpha;
    switch (p.layer) {
        case Layer::direct: p.inner_graph = [](const Graph& g) { return g; }; break;
        case Layer::clones: p.inner_graph = [alpha](const Graph& g) { return clone_graph(g, alpha).graph; }; break;
        case Layer::line:
            p.inner_graph = [alpha](const Graph& g) { return clone_graph(line_graph(g).graph, alpha).graph; };
            break;
    }
}

template <class Phase>
void set_node(Problem& p, Phase phase) {
    p.kind = ElementKind::node;
    p.layer = Layer::direct;
    p.inner_kind = ElementKind::node;
    p.inner_phi = Phase::length;
    p.make_simulation = simulation(NodeTransformer<Phase>(phase), Layer::direct, 1);
    p.make_phase_runner = node_runner(phase);
}

void set_clones(Problem& p, int alpha) {
    p.kind = ElementKind::node;
    p.layer = Layer::clones;
    p.alpha = alpha;
    p.inner_kind = ElementKind::node;
    p.inner_lcl = lcls::mis();
    p.inner_potential = builtin_potential("mis");
    p.nu = 1;
    p.inner_phi = MisPhase::length;
    using Sim = CloneSimulation<NodeTransformer<MisPhase>>;
    p.make_simulation = simulation(Sim(NodeTransformer<MisPhase>(MisPhase{}), alpha), Layer::clones, alpha);
    p.make_phase_runner = node_runner(MisPhase{});
}

template <class Phase>
void set_line(Problem& p, Phase phase, int alpha) {
    p.kind = ElementKind::edge;
    p.layer = Layer::line;
    p.alpha = alpha;
    p.inner_kind = ElementKind::node;
    p.inner_phi = Phase::length;
    p.make_simulation = simulation(LineSimulation<Phase>(phase, alpha), Layer::line, alpha);
    p.make_phase_runner = node_runner(phase);
}

}  // namespace

const std::vector<std::string>& problem_names() {
    static const std::vector<std::string> names = {
        "mis", "node-coloring", "max-node-coloring", "delta1-coloring", "inc-node-coloring",
        "mm",  "edge-coloring", "2delta1-edge-coloring", "max-edge-coloring", "inc-edge-coloring",
    };
    return names;
}

Problem make_problem(const std::string& name, int delta, const ProblemParams& params) {
    if (delta < 1) throw ConfigError("degree bound must be at least 1");
    Problem p;
    p.name = name;
    p.delta = delta;
    if (name == "mis") {
        set_node(p, MisPhase{});
        p.lcl = p.inner_lcl = lcls::mis();
        p.inner_potential = builtin_potential("mis");
        p.nu = 1;
    } else if (name == "node-coloring") {
        const int q = params.palette.value_or(delta + 1);
        if (q < delta + 1) {
            throw PaletteTooSmall("node-coloring needs a palette of at least " + std::to_string(delta + 1) + " colors");
        }
        set_node(p, ColoringPhase(q));
        p.lcl = p.inner_lcl = lcls::proper_coloring(q);
        p.inner_potential = builtin_potential("coloring", q);
        p.nu = 0;
    } else if (name == "inc-node-coloring") {
        const int c = param_c(params, 2, delta + 2, name);
        set_node(p, IncrementalPhase(c));
        p.lcl = p.inner_lcl = lcls::incremental_coloring(c);
        p.inner_potential = builtin_potential("incremental-coloring", c);
        p.nu = c - 1;
    } else if (name == "max-node-coloring") {
        const int c = param_c(params, 2, delta + 2, name);
        set_clones(p, c - 1);
        p.lcl = lcls::maximal_coloring(c);
    } else if (name == "delta1-coloring") {
        set_clones(p, delta + 1);
        p.lcl = lcls::maximal_coloring(delta + 2);
    } else if (name == "mm") {
        p.kind = p.inner_kind = ElementKind::edge;
        p.inner_phi = MatchingPhase::length;
        p.make_simulation = simulation(EdgeTransformer<MatchingPhase, MatchingDetect>(MatchingPhase{}, MatchingDetect{}),
                                       Layer::direct, 1);
        p.make_phase_runner = edge_runner(MatchingPhase{});
        p.lcl = p.inner_lcl = lcls::maximal_matching();
        p.inner_potential = builtin_potential("mm");
        p.nu = 1;
    } else if (name == "edge-coloring") {
        const int q = params.palette.value_or(static_cast<int>(std::ceil(2.5 * delta)));
        if (q < 2 * delta + 1) {
            throw PaletteTooSmall("edge-coloring needs a palette of at least " + std::to_string(2 * delta + 1) +
                                  " colors");
        }
        p.kind = p.inner_kind = ElementKind::edge;
        p.inner_phi = EdgeColoringPhase::length;
        EdgeColoringDetect detect;
        detect.q = q;
        p.make_simulation =
            simulation(EdgeTransformer<EdgeColoringPhase, EdgeColoringDetect>(EdgeColoringPhase(q), detect),
                       Layer::direct, 1);
        p.make_phase_runner = edge_runner(EdgeColoringPhase(q));
        p.lcl = p.inner_lcl = lcls::proper_coloring(q, ElementKind::edge);
        p.inner_potential = builtin_potential("edge-coloring", q);
        p.nu = 0;
    } else if (name == "2delta1-edge-coloring") {
        set_line(p, MisPhase{}, 2 * delta - 1);
        p.lcl = lcls::maximal_coloring(2 * delta, ElementKind::edge);
        p.inner_lcl = lcls::mis();
        p.inner_potential = builtin_potential("mis");
        p.nu = 1;
    } else if (name == "max-edge-coloring") {
        const int c = param_c(params, 2, 2 * delta, name);
        set_line(p, MisPhase{}, c - 1);
        p.lcl = lcls::maximal_coloring(c, ElementKind::edge);
        p.inner_lcl = lcls::mis();
        p.inner_potential = builtin_potential("mis");
        p.nu = 1;
    } else if (name == "inc-edge-coloring") {
        const int c = param_c(params, 2, 2 * delta, name);
        set_line(p, IncrementalPhase(c), 1);
        p.lcl = lcls::incremental_coloring(c, ElementKind::edge);
        p.inner_lcl = lcls::incremental_coloring(c);
        p.inner_potential = builtin_potential("incremental-coloring", c);
        p.nu = c - 1;
    } else {
        throw UnknownProblem("unknown problem: " + name);
    }
    finish(p);
    return p;
}

int inner_degree_bound(const Problem& problem) {
    switch (problem.layer) {
        case Layer::direct: return problem.delta;
        case Layer::clones: return problem.delta + problem.alpha - 1;
        case Layer::line: return std::max(1, 2 * problem.delta - 2) + problem.alpha - 1;
    }
    return problem.delta;
}

Configuration host_edge_configuration(const Graph& g, const std::function<Value(NodeId, Port)>& out) {
    Configuration c = Configuration::edges_bottom(g);
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
        const NodeId u = c.edges[k].a;
        const NodeId v = c.edges[k].b;
        const Value x = out(u, *g.port_to(u, v));
        const Value y = out(v, *g.port_to(v, u));
        c.values[k] = x == y ? x : kBottom;
    }
    return c;
}

}  // namespace sslcl

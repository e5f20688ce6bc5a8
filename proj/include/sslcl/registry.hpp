#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sslcl/configuration.hpp"
#include "sslcl/lcl.hpp"
#include "sslcl/potential.hpp"
#include "sslcl/simulation.hpp"

namespace sslcl {

struct ProblemParams {
    std::optional<int> palette;  ///< node-coloring, edge-coloring
    std::optional<int> c;        ///< max-*, inc-* problems
};

/// How the problem's algorithm relates to the network it runs on.
enum class Layer { direct, clones, line };

/// One fault-free synchronized phase of the inner phase procedure on the
/// inner graph. Returns the configuration after the phase; the runner keeps
/// its coin streams between calls.
class PhaseRunner {
public:
    virtual ~PhaseRunner() = default;
    virtual Configuration run(const Graph& g, const Configuration& c) = 0;
    /// Decisions on which the two endpoints of an edge disagreed.
    virtual std::size_t disagreements() const { return 0; }
};

/// A registry problem instantiated for a degree bound.
struct Problem {
    std::string name;
    int delta = 0;
    ElementKind kind = ElementKind::node;  ///< host elements
    LclSpec lcl = lcls::mis();             ///< host legality

    Layer layer = Layer::direct;
    int alpha = 1;                         ///< clones per host element
    ElementKind inner_kind = ElementKind::node;
    LclSpec inner_lcl = lcls::mis();
    PotentialSpec inner_potential;

    int nu = 0;          ///< influence number of the inner LCL
    int inner_phi = 0;   ///< phase length of the inner phase procedure
    int host_phi = 0;    ///< phase length in host rounds
    int strong_offset = 0;     ///< t_s - t*_b
    int locality_radius = 0;   ///< elements at distance >= this never change
    int confirm_window = 0;    ///< default stabilization confirm window

    std::function<std::unique_ptr<Simulation>(Graph, std::uint64_t)> make_simulation;
    std::function<std::unique_ptr<PhaseRunner>(const Graph& inner, std::uint64_t)> make_phase_runner;
    /// Builds the inner graph from a host graph.
    std::function<Graph(const Graph&)> inner_graph;
};

const std::vector<std::string>& problem_names();

/// Throws UnknownProblem, PaletteTooSmall or ConfigError.
Problem make_problem(const std::string& name, int delta, const ProblemParams& params = {});

/// Host edge configurations treat a port-inconsistent edge as undecided.
/// Degree bound of the graph the inner algorithm runs on.
int inner_degree_bound(const Problem& problem);

Configuration host_edge_configuration(const Graph& g, const std::function<Value(NodeId, Port)>& out);

}  // namespace sslcl

#pragma once

#include <memory>

#include "sslcl/adversary.hpp"
#include "sslcl/configuration.hpp"
#include "sslcl/graph.hpp"
#include "sslcl/network.hpp"

namespace sslcl {

/// A running network of some transformed algorithm, seen through its
/// configurations. The host configuration lives on the network graph; the
/// inner configuration lives on the graph the algorithm actually solves (the
/// same graph, a clone graph, or a clone graph of the line graph).
class Simulation {
public:
    virtual ~Simulation() = default;

    virtual void run_round() = 0;
    virtual void apply(const AdversaryAction& action) = 0;
    virtual void randomize_all() = 0;
    /// Replaces all random streams with ones derived from a new master seed.
    virtual void reseed(std::uint64_t seed) = 0;
    virtual long long time() const = 0;
    virtual const Graph& graph() const = 0;
    virtual TestHooks& hooks() = 0;

    virtual Configuration configuration() const = 0;
    virtual const Graph& inner_graph() = 0;
    virtual Configuration inner_configuration() const = 0;
    /// Edges whose two endpoints hold different output registers for it
    /// (always 0 for node problems).
    virtual std::size_t port_inconsistent_edges() const = 0;

    virtual std::unique_ptr<Simulation> copy() const = 0;
};

}  // namespace sslcl

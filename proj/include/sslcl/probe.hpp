#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sslcl/registry.hpp"

namespace sslcl {

struct ProbeOptions {
    int trials = 1000;
    std::uint64_t seed = 1;
    int min_nodes = 2;
    int max_nodes = 20;
    double edge_probability = 0.3;
};

/// Statistics of single fault-free phases run on random strongly configured
/// graphs of the problem's simulated graph.
struct ProbeReport {
    std::string problem;
    int delta = 0;
    int trials = 0;
    /// Decided elements that changed or became uncontent, newly decided
    /// uncontent elements, and edge decisions the endpoints disagreed on.
    long long respectful_violations = 0;
    long long endpoint_disagreements = 0;
    long long zero_potential_instances = 0;
    long long zero_potential_complete = 0;
    long long positive_potential_instances = 0;
    double beta_hat = 0;        ///< mean one-phase relative potential reduction
    double beta_stderr = 0;
    double beta_ci99_low = 0;
    double beta_ci99_high = 0;
    std::vector<std::string> violation_examples;  ///< at most a few
};

/// Each trial draws a random host graph, builds the simulated graph, samples
/// a random strong configuration (all-undecided in a quarter of the trials),
/// optionally deletes undecided elements (a random subset, or enough of them
/// to make the potential zero), runs one synchronized phase and checks it.
ProbeReport eligibility_probe(const Problem& problem, const ProbeOptions& options);

}  // namespace sslcl

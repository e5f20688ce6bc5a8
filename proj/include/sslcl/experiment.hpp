#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sslcl/registry.hpp"
#include "sslcl/simulation.hpp"
#include "sslcl/trace.hpp"

namespace sslcl {

struct StableResult {
    long long round = 0;          ///< first round of the final legal configuration
    Configuration configuration;
};

/// Legal at host level, and at the simulated level for clone / line problems.
bool is_legal_state(Simulation& sim, const Problem& problem, const Configuration& host);

/// Runs until the configuration is legal and stays identical for
/// confirm_window further rounds (the confirm rounds are run too). The
/// observer sees the host configuration after every round. Throws Timeout
/// when max_rounds rounds pass without that.
StableResult run_until_stable(Simulation& sim, const Problem& problem, long long max_rounds, int confirm_window,
                              const std::function<void(const Configuration&)>& observer = {});

struct TrialOptions {
    int k = 1;
    int batches = 1;
    std::vector<std::string> kinds{"corrupt"};
    long long max_rounds = 100000;
    int confirm_window = 0;         ///< 0: the problem's default
    bool randomized_start = false;  ///< corrupt every register at time 0 instead of injecting k faults
    bool check_invariants = false;  ///< strength and potential monotonicity after t_s
    bool record_trace = false;
};

struct TrialResult {
    bool timeout = false;
    long long initial_rounds = 0;      ///< rounds to the initial legal configuration
    long long t_a = 0;
    long long t_b = 0;
    long long stabilization_round = -1;
    long long T = -1;
    std::vector<NodeId> manipulated;
    bool ts_reached = false;
    std::size_t undecided_at_ts = 0;
    long long potential_at_ts = 0;
    long long locality_violations = 0;
    bool legal = false;
    long long strength_violations = 0;
    long long potential_increases = 0;
    Configuration final_configuration;  ///< host configuration when the trial ended
    RunTrace trace;
};

/// One trial: build the network, reach a legal configuration from the
/// all-bottom state, apply a random schedule of k manipulations, and measure
/// recovery from t*_b. With randomized_start the network starts from a fully
/// corrupted state instead (t*_a = t*_b = 0).
TrialResult run_trial(const Problem& problem, const Graph& g, std::uint64_t seed, const TrialOptions& options);

/// Network started from the all-bottom state and run fault-free until it is
/// stably legal. Throws Timeout.
std::unique_ptr<Simulation> initial_legal_simulation(const Problem& problem, const Graph& g, std::uint64_t seed,
                                                     long long max_rounds, int confirm_window = 0);

/// Trial on a copy of an already legal network whose random streams are
/// reseeded from `seed`, so trials sharing a start state use fresh coins.
TrialResult run_trial_from(const Problem& problem, const Simulation& initial, std::uint64_t seed,
                           const TrialOptions& options);

/// Recovery part of a trial on a network that is already legal.
TrialResult run_faults(const Problem& problem, Simulation& sim, std::uint64_t seed, const TrialOptions& options);

struct LinearFit {
    double intercept = 0;
    double slope = 0;
    double residual = 0;  ///< sum of squared residuals
};

/// Least-squares fit y = intercept + slope * x.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct Summary {
    std::size_t count = 0;
    double mean = 0;
    double stderr_mean = 0;
    double median = 0;
};

Summary summarize(std::vector<double> values);

}  // namespace sslcl

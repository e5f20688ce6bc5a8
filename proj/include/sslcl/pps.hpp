#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sslcl/rng.hpp"

namespace sslcl {

/// Step register value; kHbar is the idle state, 0..phi-1 the phase steps.
using Step = int;
inline constexpr Step kHbar = -1;

/// State of the phase synchronization chain over {hbar, 0, ..., phi-1}.
struct PpsState {
    Step step = kHbar;
    int phi = 2;

    friend bool operator==(const PpsState&, const PpsState&) = default;
};

/// One transition. Draws exactly one coin from rng when at hbar.
PpsState step_counter(PpsState s, Rng& rng);

/// Same transition on a raw step value.
Step next_step(Step s, int phi, Rng& rng);

inline Step get_step(const PpsState& s) { return s.step; }

/// Index of a step in the state vector: hbar -> 0, j -> j + 1.
inline int state_index(Step s) { return s + 1; }
inline Step state_at(int index) { return index - 1; }

/// Uniform draw from {hbar, 0, ..., phi-1}.
Step random_step(int phi, Rng& rng);

struct MixingProfile {
    int phi = 2;
    std::vector<double> frequency;  ///< by state_index
    std::vector<double> standard_error;  ///< binomial standard error per state
    long long samples = 0;
};

/// Runs `samples` independent chains split evenly over all phi+1 initial
/// states and records the state reached after `warmup` transitions.
MixingProfile mixing_profile(int phi, int warmup, long long samples, std::uint64_t seed);

/// Empirical Pr(step_t = 0) from a fixed initial state.
double phase_start_frequency(int phi, Step initial, int t, long long chains, std::uint64_t seed);

/// Row-stochastic transition matrix, indexed by state_index.
Eigen::MatrixXd pps_transition_matrix(int phi);

/// Exact distribution after t transitions from the given state.
Eigen::VectorXd pps_distribution(int phi, Step initial, int t);

/// Stationary distribution: 2/(phi+2) at hbar, 1/(phi+2) elsewhere.
Eigen::VectorXd pps_stationary(int phi);

/// Smallest t such that for every t' in [t, horizon] and every initial state
/// Pr(step_t' = 0) >= 1/(2 phi) + margin, computed exactly.
int calibrate_tau(int phi, double margin = 0.0, int horizon = 0);

/// Reads the calibrated tau for phi from calibration/pps_tau.json.
int calibrated_tau(int phi);

}  // namespace sslcl

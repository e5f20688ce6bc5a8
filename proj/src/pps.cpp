#include "sslcl/pps.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "sslcl/errors.hpp"

namespace sslcl {

Step next_step(Step s, int phi, Rng& rng) {
    if (s == kHbar) return rng.coin() ? 0 : kHbar;
    if (s >= phi - 1) return kHbar;
    return s + 1;
}

PpsState step_counter(PpsState s, Rng& rng) {
    s.step = next_step(s.step, s.phi, rng);
    return s;
}

Step random_step(int phi, Rng& rng) { return state_at(static_cast<int>(rng.below(static_cast<std::uint64_t>(phi + 1)))); }

MixingProfile mixing_profile(int phi, int warmup, long long samples, std::uint64_t seed) {
    if (phi < 2) throw ConfigError("phase length must be at least 2");
    if (warmup < 1) throw ConfigError("warmup must be positive");
    if (samples < 1) throw ConfigError("samples must be positive");
    MixingProfile prof;
    prof.phi = phi;
    prof.samples = samples;
    std::vector<long long> counts(static_cast<std::size_t>(phi + 1), 0);
    const int states = phi + 1;
    for (long long i = 0; i < samples; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i), "mix");
        Step s = state_at(static_cast<int>(i % states));
        for (int t = 0; t < warmup; ++t) s = next_step(s, phi, rng);
        ++counts[static_cast<std::size_t>(state_index(s))];
    }
    for (long long c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(samples);
        prof.frequency.push_back(p);
        prof.standard_error.push_back(std::sqrt(p * (1 - p) / static_cast<double>(samples)));
    }
    return prof;
}

double phase_start_frequency(int phi, Step initial, int t, long long chains, std::uint64_t seed) {
    long long hits = 0;
    for (long long i = 0; i < chains; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i), "start");
        Step s = initial;
        for (int r = 0; r < t; ++r) s = next_step(s, phi, rng);
        if (s == 0) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(chains);
}

Eigen::MatrixXd pps_transition_matrix(int phi) {
    const int n = phi + 1;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    p(state_index(kHbar), state_index(kHbar)) = 0.5;
    p(state_index(kHbar), state_index(0)) = 0.5;
    for (Step j = 0; j < phi - 1; ++j) p(state_index(j), state_index(j + 1)) = 1.0;
    p(state_index(phi - 1), state_index(kHbar)) = 1.0;
    return p;
}

Eigen::VectorXd pps_distribution(int phi, Step initial, int t) {
    const Eigen::MatrixXd p = pps_transition_matrix(phi);
    Eigen::RowVectorXd dist = Eigen::RowVectorXd::Zero(phi + 1);
    dist(state_index(initial)) = 1.0;
    for (int i = 0; i < t; ++i) dist = dist * p;
    return dist.transpose();
}

Eigen::VectorXd pps_stationary(int phi) {
    const int n = phi + 1;
    // Solve pi (P - I) = 0 with sum(pi) = 1 as a least-squares system.
    Eigen::MatrixXd a(n + 1, n);
    a.topRows(n) = (pps_transition_matrix(phi) - Eigen::MatrixXd::Identity(n, n)).transpose();
    a.row(n).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
    b(n) = 1.0;
    return a.colPivHouseholderQr().solve(b);
}

int calibrate_tau(int phi, double margin, int horizon) {
    if (horizon <= 0) horizon = 50 * phi * phi * phi;
    const Eigen::MatrixXd p = pps_transition_matrix(phi);
    const double bound = 1.0 / (2.0 * phi) + margin;
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(phi + 1, phi + 1);
    int tau = -1;
    for (int t = 0; t <= horizon; ++t) {
        const bool ok = power.col(state_index(0)).minCoeff() >= bound;
        if (!ok) {
            tau = -1;
        } else if (tau < 0) {
            tau = t;
        }
        power = power * p;
    }
    if (tau < 0) throw Error("phase-start bound not reached within the horizon");
    return tau;
}

int calibrated_tau(int phi) {
    const std::string path = std::string(SSLCL_CALIBRATION_DIR) + "/pps_tau.json";
    std::ifstream in(path);
    if (!in) throw ConfigError("missing calibration file " + path);
    const auto doc = nlohmann::json::parse(in);
    const auto key = std::to_string(phi);
    if (!doc.contains("tau") || !doc["tau"].contains(key)) throw ConfigError("no calibrated tau for phi=" + key);
    return doc["tau"][key].get<int>();
}

}  // namespace sslcl

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sslcl/graph.hpp"

namespace sslcl {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 1,
    exit_assertion_failed = 2,
    exit_timeout = 3,
};

struct GraphSpec {
    /// cycle, path, grid, star, complete, random or edge-list.
    std::string generator = "cycle";
    std::size_t n = 64;       ///< nodes (cycle, path, complete, random) or leaves (star)
    std::size_t rows = 8;     ///< grid
    std::size_t cols = 8;     ///< grid
    double p = 0.3;           ///< random: edge probability
    std::string path;         ///< edge-list: file with "u v" lines
};

/// Everything a subcommand reads. Unused fields are ignored by the commands
/// that do not need them but still enter the config hash.
struct ExperimentConfig {
    std::string problem = "mis";
    GraphSpec graph;
    int delta = 0;  ///< 0: the generator's natural bound (random graphs: 6)
    std::optional<int> palette;
    std::optional<int> c;
    int k = 1;
    std::vector<int> k_list;  ///< scale only
    int batches = 1;
    std::vector<std::string> fault_kinds{"corrupt"};
    int trials = 10;
    std::uint64_t seed = 1;
    long long max_rounds = 100000;
    int confirm_window = 0;  ///< 0: the problem's default 2*phi+2
    bool randomized_start = false;
    std::string output = "-";  ///< "-" is standard output
    std::string format = "csv";
    std::string trace;  ///< run only: JSON-lines trace file, empty for none
    int phi = 4;        ///< mix
    int warmup = 500;   ///< mix
    long long samples = 1000000;  ///< mix
    int probe_trials = 1000;      ///< check-eligibility
    bool assert_scaling = false;  ///< scale: fail unless the log-k fit beats the linear fit
};

/// Reads a config document. Unknown keys and ill-typed values raise
/// ConfigError. Missing keys keep their defaults.
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

/// Canonical form: every field, fixed key order.
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

/// 64-bit FNV-1a of the canonical dump, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

/// Builds the graph described by the config, with the effective degree bound.
Graph build_graph(const ExperimentConfig& config);

/// Writes records as CSV (union of keys as header, in first-seen order, null
/// as an empty cell) or as a JSON array.
void write_records(std::ostream& os, const std::vector<nlohmann::ordered_json>& records, const std::string& format);

/// Results of a subcommand: the records it emitted and its exit code.
struct CommandOutput {
    std::vector<nlohmann::ordered_json> records;
    int exit_code = exit_ok;
};

/// One (problem, graph, k) point: one initial legal configuration computed
/// fault-free from all-bottom, then per trial a fresh copy with reseeded coins,
/// a random fault schedule and the recovery measurement. With
/// randomized_start every trial starts from a fully corrupted state instead.
/// When trace_out is given each round of each trial is written to it.
CommandOutput cmd_run(const ExperimentConfig& config, std::ostream* trace_out = nullptr);

/// The run measurement for every k in k_list on one shared initial
/// configuration, followed by least-squares fits of mean T against ln k and k.
CommandOutput cmd_scale(const ExperimentConfig& config);

/// Empirical distribution of the synchronization chain after warmup steps.
CommandOutput cmd_mix(const ExperimentConfig& config);

/// Mechanical eligibility analysis of the inner LCL plus the statistical probe.
CommandOutput cmd_check_eligibility(const ExperimentConfig& config);

}  // namespace sslcl

#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "json.hpp"
#include "sslcl/configuration.hpp"
#include "sslcl/graph.hpp"

namespace sslcl {

/// One line of a run trace.
struct TraceRecord {
    long long round = 0;
    std::size_t num_undecided = 0;
    long long potential = 0;
    std::size_t num_uncontent = 0;
    std::vector<NodeId> changed_nodes;  ///< nodes whose output register(s) changed in this round
};

struct RunTrace {
    std::vector<TraceRecord> rounds;
    std::optional<long long> stabilization_round;
};

/// Nodes whose output changed between two configurations of the same kind.
/// For edge configurations both endpoints of a changed, added or removed edge
/// are reported. Sorted, without duplicates.
std::vector<NodeId> changed_nodes(const Configuration& before, const Configuration& after);

/// JSON-lines: one object per round with the keys round, num_undecided,
/// potential, num_uncontent, changed_nodes, followed by the keys of context.
void write_trace_jsonl(std::ostream& os, const RunTrace& trace, const nlohmann::ordered_json& context = {});

}  // namespace sslcl

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sslcl/graph.hpp"

namespace sslcl {

/// Register groups an adversary may corrupt.
enum RegisterMask : unsigned {
    reg_out = 1u << 0,
    reg_step = 1u << 1,
    reg_wait = 1u << 2,
    reg_phase = 1u << 3,
    reg_inbox = 1u << 4,
    reg_all = 0x1fu,
};

struct AdversaryAction {
    enum class Kind { corrupt, rewire, add_node, remove_node, add_edge, remove_edge };

    Kind kind = Kind::corrupt;
    long long round = 0;                ///< applied at the end of this round
    NodeId node = 0;
    NodeId other = 0;                   ///< second endpoint for edge actions
    std::vector<NodeId> attach;         ///< neighbors of an added node
    unsigned registers = reg_all;       ///< for corrupt
    std::vector<Port> permutation;      ///< for rewire; empty = drawn at random
};

std::string to_string(AdversaryAction::Kind kind);
AdversaryAction::Kind parse_action_kind(const std::string& name);

/// Nodes manipulated by the action (evaluated on the graph before it applies).
std::vector<NodeId> manipulated_nodes(const AdversaryAction& a, const Graph& before);

/// Fault kinds accepted by random schedules: "corrupt", "rewire", "edge".
/// "edge" pairs up nodes of a batch and toggles the edge between them
/// (removal if adjacent, insertion if both have spare degree, otherwise both
/// are corrupted), so every chosen node is manipulated exactly once.
std::vector<AdversaryAction> random_fault_schedule(const Graph& g, int k, int batches,
                                                   const std::vector<std::string>& kinds, std::uint64_t seed,
                                                   long long first_round, int gap = 1);

}  // namespace sslcl

#include "sslcl/trace.hpp"

#include <algorithm>

namespace sslcl {

std::vector<NodeId> changed_nodes(const Configuration& before, const Configuration& after) {
    std::vector<NodeId> out;
    if (after.kind == ElementKind::node) {
        const auto n = std::max(before.values.size(), after.values.size());
        for (std::size_t v = 0; v < n; ++v) {
            const Value x = v < before.values.size() ? before.values[v] : kBottom;
            const Value y = v < after.values.size() ? after.values[v] : kBottom;
            if (x != y) out.push_back(static_cast<NodeId>(v));
        }
        return out;
    }
    std::size_t i = 0;
    std::size_t j = 0;
    auto touch = [&](const EdgeId& e) {
        out.push_back(e.a);
        out.push_back(e.b);
    };
    while (i < before.edges.size() || j < after.edges.size()) {
        if (j == after.edges.size() || (i < before.edges.size() && before.edges[i] < after.edges[j])) {
            touch(before.edges[i++]);
        } else if (i == before.edges.size() || after.edges[j] < before.edges[i]) {
            touch(after.edges[j++]);
        } else {
            if (before.values[i] != after.values[j]) touch(after.edges[j]);
            ++i;
            ++j;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void write_trace_jsonl(std::ostream& os, const RunTrace& trace, const nlohmann::ordered_json& context) {
    for (const auto& r : trace.rounds) {
        nlohmann::ordered_json j;
        j["round"] = r.round;
        j["num_undecided"] = r.num_undecided;
        j["potential"] = r.potential;
        j["num_uncontent"] = r.num_uncontent;
        j["changed_nodes"] = r.changed_nodes;
        if (context.is_object()) {
            for (auto it = context.begin(); it != context.end(); ++it) j[it.key()] = it.value();
        }
        os << j.dump() << '\n';
    }
}

}  // namespace sslcl

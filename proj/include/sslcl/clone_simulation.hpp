#pragma once

#include <span>
#include <vector>

#include "sslcl/adversary.hpp"
#include "sslcl/network.hpp"

namespace sslcl {

/// Host output of a node whose clones solved MIS on the clone graph: i if
/// clone i (1-based) is IN, alpha+1 if every clone is OUT, bottom otherwise.
inline Value combine_clone_outputs(std::span<const Value> clones) {
    Value in_clone = kBottom;
    for (std::size_t i = 0; i < clones.size(); ++i) {
        if (clones[i] == kBottom) return kBottom;
        if (clones[i] == 1 && in_clone == kBottom) in_clone = static_cast<Value>(i + 1);
    }
    return in_clone != kBottom ? in_clone : static_cast<Value>(clones.size() + 1);
}

/// Runs alpha copies of a node program, one per layer of the clone graph.
/// Clone i's ports are its clique neighbors (increasing clone index) followed
/// by the host's ports; clique messages stay inside the host and are delivered
/// in the next round.
template <class Inner>
class CloneSimulation {
public:
    using InnerState = typename Inner::State;
    using InnerMessage = typename Inner::Message;
    using Message = std::vector<InnerMessage>;
    static constexpr ElementKind output_kind = ElementKind::node;

    struct State {
        std::vector<InnerState> clones;
        std::vector<std::vector<InnerMessage>> clique_out;  ///< [clone][clique port]
    };

    CloneSimulation(Inner inner, int alpha) : inner_(std::move(inner)), alpha_(alpha) {}

    const Inner& inner() const { return inner_; }
    int alpha() const { return alpha_; }
    int phase_length() const { return inner_.phase_length(); }

    State make_state(const StateSeed& seed) const {
        State s;
        const auto a = static_cast<std::size_t>(alpha_);
        for (std::size_t i = 0; i < a; ++i) {
            const NodeId h = seed.handle * static_cast<NodeId>(alpha_) + static_cast<NodeId>(i);
            s.clones.push_back(inner_.make_state({seed.master, h, alpha_ - 1 + seed.degree}));
        }
        s.clique_out.assign(a, std::vector<InnerMessage>(a - 1));
        return s;
    }

    void reseed(State& s, const StateSeed& seed) const {
        for (std::size_t i = 0; i < s.clones.size(); ++i) {
            const NodeId h = seed.handle * static_cast<NodeId>(alpha_) + static_cast<NodeId>(i);
            inner_.reseed(s.clones[i], {seed.master, h, alpha_ - 1 + seed.degree});
        }
    }

    void compute(State& s, RoundContext& ctx, std::span<const Message> in, std::span<Message> out) const {
        const auto a = static_cast<std::size_t>(alpha_);
        const auto d = in.size();
        RoundContext inner_ctx = ctx;
        inner_ctx.degree = alpha_ - 1 + ctx.degree;
        inner_ctx.delta = ctx.delta + alpha_ - 1;
        std::vector<std::vector<InnerMessage>> next(a);
        std::vector<InnerMessage> inbox(a - 1 + d);
        std::vector<InnerMessage> outbox(a - 1 + d);
        for (auto& m : out) m.resize(a);
        for (std::size_t i = 0; i < a; ++i) {
            std::size_t k = 0;
            for (std::size_t j = 0; j < a; ++j) {
                if (j == i) continue;
                inbox[k++] = s.clique_out[j][i < j ? i : i - 1];
            }
            for (std::size_t p = 0; p < d; ++p) {
                inbox[a - 1 + p] = i < in[p].size() ? in[p][i] : InnerMessage{};
            }
            inner_.compute(s.clones[i], inner_ctx, std::span<const InnerMessage>(inbox), std::span<InnerMessage>(outbox));
            next[i].assign(outbox.begin(), outbox.begin() + static_cast<long>(a - 1));
            for (std::size_t p = 0; p < d; ++p) out[p][i] = outbox[a - 1 + p];
        }
        s.clique_out = std::move(next);
    }

    void corrupt(State& s, int degree, unsigned mask, Rng& rng) const {
        for (auto& c : s.clones) inner_.corrupt(c, alpha_ - 1 + degree, mask, rng);
        if (mask & reg_inbox) {
            for (auto& row : s.clique_out) {
                for (auto& m : row) m = inner_.random_message(alpha_ - 1 + degree, rng);
            }
        }
    }

    Message random_message(int degree, Rng& rng) const {
        Message m;
        for (int i = 0; i < alpha_; ++i) m.push_back(inner_.random_message(alpha_ - 1 + degree, rng));
        return m;
    }

    void remove_port(State& s, Port p) const {
        for (auto& c : s.clones) inner_.remove_port(c, static_cast<Port>(alpha_ - 1) + p);
    }
    void add_port(State& s, Rng& rng) const {
        for (auto& c : s.clones) inner_.add_port(c, rng);
    }

    Value output(const State& s, Port) const {
        std::vector<Value> v;
        for (const auto& c : s.clones) v.push_back(inner_.output(c, 0));
        return combine_clone_outputs(v);
    }
    Value clone_output(const State& s, Port, int clone) const {
        return inner_.output(s.clones[static_cast<std::size_t>(clone)], 0);
    }

private:
    Inner inner_;
    int alpha_;
};

}  // namespace sslcl

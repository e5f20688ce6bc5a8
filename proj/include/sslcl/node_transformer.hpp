#pragma once

#include <span>
#include <vector>

#include "sslcl/adversary.hpp"
#include "sslcl/lcl.hpp"
#include "sslcl/network.hpp"
#include "sslcl/node_phases.hpp"
#include "sslcl/pps.hpp"

namespace sslcl {

/// Content of the phase field of a message.
template <class Payload>
struct PhaseField {
    enum class Tag : unsigned char { nil, output, payload };

    Tag tag = Tag::nil;
    Value out = kBottom;  ///< meaningful when tag == output
    Payload payload{};    ///< meaningful when tag == payload

    bool announces_bottom() const { return tag == Tag::output && out == kBottom; }
};

template <class Payload>
struct NodeMessage {
    Value detect = kBottom;
    PhaseField<Payload> phase;
    Step pps = kHbar;
};

/// Detection for node LCLs: every node broadcasts its output and checks the
/// predicate against the decided values it receives.
struct LclDetect {
    LclSpec lcl;

    Value message(Value out) const { return out; }
    bool verdict(Value out, const Multiset& decided_neighbors) const { return lcl(out, decided_neighbors); }
};

/// Per-node registers of the transformed node algorithm.
template <class Phase>
struct NodeState {
    Value out = kBottom;
    bool wait = false;
    Step step = kHbar;
    std::vector<unsigned char> in_s;  ///< per port: member of S_v in the current phase
    int s_count = 0;
    typename Phase::Regs regs{};
    Rng pps_rng;
    Rng phase_rng;
};

/// The self-stabilizing node-LCL algorithm obtained from a phase procedure:
/// Detect on decided nodes, gated phase simulation on undecided ones, and the
/// phase synchronization chain.
template <class Phase>
class NodeTransformer {
public:
    using State = NodeState<Phase>;
    using Message = NodeMessage<typename Phase::Payload>;
    using Payload = typename Phase::Payload;
    static constexpr ElementKind output_kind = ElementKind::node;

    explicit NodeTransformer(Phase phase) : phase_(std::move(phase)), detect_{phase_.lcl()} {
        static_assert(Phase::length >= 2, "a phase needs an announcement and a decision step");
    }

    const Phase& phase() const { return phase_; }
    int phase_length() const { return Phase::length; }
    int alphabet_size() const { return phase_.alphabet_size(); }

    State make_state(const StateSeed& seed) const {
        State s;
        s.in_s.assign(static_cast<std::size_t>(seed.degree), 0);
        s.pps_rng = Rng(seed.master, seed.handle, "pps");
        s.phase_rng = Rng(seed.master, seed.handle, "phase");
        return s;
    }

    void reseed(State& s, const StateSeed& seed) const {
        s.pps_rng = Rng(seed.master, seed.handle, "pps");
        s.phase_rng = Rng(seed.master, seed.handle, "phase");
    }

    void compute(State& s, RoundContext& ctx, std::span<const Message> in, std::span<Message> out) const {
        const Step step = s.step;
        const auto d = in.size();
        for (auto& m : out) m.phase = PhaseField<Payload>{};
        if (step == kHbar) s.wait = false;

        if (s.out != kBottom) {
            Multiset m(phase_.alphabet_size());
            for (const auto& msg : in) add_decided(m, msg.detect);
            if (!detect_.verdict(s.out, m)) {
                s.out = kBottom;
                s.wait = true;
            } else {
                for (auto& msg : out) {
                    msg.phase.tag = PhaseField<Payload>::Tag::output;
                    msg.phase.out = s.out;
                }
            }
        } else if (!s.wait && step != kHbar) {
            if (step == 0) {
                s.regs = typename Phase::Regs{};
                std::fill(s.in_s.begin(), s.in_s.end(), 0);
                s.s_count = 0;
                for (auto& msg : out) {
                    msg.phase.tag = PhaseField<Payload>::Tag::output;
                    msg.phase.out = kBottom;
                }
            } else {
                if (step == 1) {
                    s.s_count = 0;
                    for (std::size_t p = 0; p < d; ++p) {
                        s.in_s[p] = in[p].pps == 0 && in[p].phase.announces_bottom();
                        s.s_count += s.in_s[p];
                    }
                }
                run_phase_step(s, step, ctx, in, out);
            }
        }

        for (auto& msg : out) {
            msg.pps = step;
            msg.detect = detect_.message(s.out);
        }
        s.step = (ctx.forced_start() && step == kHbar) ? 0 : next_step(step, Phase::length, s.pps_rng);
    }

    void corrupt(State& s, int degree, unsigned mask, Rng& rng) const {
        if (mask & reg_out) s.out = static_cast<Value>(rng.below(static_cast<std::uint64_t>(phase_.alphabet_size() + 1)));
        if (mask & reg_step) s.step = random_step(Phase::length, rng);
        if (mask & reg_wait) s.wait = rng.coin();
        if (mask & reg_phase) {
            phase_.randomize(s.regs, rng);
            s.in_s.assign(static_cast<std::size_t>(degree), 0);
            s.s_count = 0;
            for (auto& b : s.in_s) {
                b = rng.coin();
                s.s_count += b;
            }
        }
    }

    Message random_message(int, Rng& rng) const {
        Message m;
        m.detect = static_cast<Value>(rng.below(static_cast<std::uint64_t>(phase_.alphabet_size() + 1)));
        m.pps = random_step(Phase::length, rng);
        switch (rng.below(3)) {
            case 0: break;
            case 1:
                m.phase.tag = PhaseField<Payload>::Tag::output;
                m.phase.out = static_cast<Value>(rng.below(static_cast<std::uint64_t>(phase_.alphabet_size() + 1)));
                break;
            default:
                m.phase.tag = PhaseField<Payload>::Tag::payload;
                m.phase.payload = phase_.random_payload(rng);
        }
        return m;
    }

    void remove_port(State& s, Port p) const {
        s.s_count -= s.in_s[p];
        s.in_s.erase(s.in_s.begin() + p);
    }
    void add_port(State& s, Rng& rng) const {
        s.in_s.push_back(rng.coin());
        s.s_count += s.in_s.back();
    }

    Value output(const State& s, Port) const { return s.out; }

private:
    void add_decided(Multiset& m, Value v) const {
        if (v >= 1 && v <= phase_.alphabet_size()) m.add(v);
    }

    void run_phase_step(State& s, Step step, RoundContext& ctx, std::span<const Message> in,
                        std::span<Message> out) const {
        std::vector<const Payload*> inbox;
        std::vector<Port> ports;
        inbox.reserve(static_cast<std::size_t>(s.s_count));
        for (Port p = 0; p < in.size(); ++p) {
            if (!s.in_s[p]) continue;
            ports.push_back(p);
            inbox.push_back(in[p].phase.tag == PhaseField<Payload>::Tag::payload ? &in[p].phase.payload : nullptr);
        }
        const PhaseView view{static_cast<int>(ports.size()), ctx.delta};
        if (step < Phase::length - 1) {
            std::vector<Payload> sent(ports.size());
            phase_.work(step, s.regs, view, inbox, sent, s.phase_rng);
            for (std::size_t i = 0; i < ports.size(); ++i) {
                out[ports[i]].phase.tag = PhaseField<Payload>::Tag::payload;
                out[ports[i]].phase.payload = sent[i];
            }
            return;
        }
        const auto summary = phase_.summarize(s.regs, view, inbox);
        Multiset decided(phase_.alphabet_size());
        for (const auto& msg : in) add_decided(decided, msg.detect);
        const Value v = phase_.decide(summary, decided);
        if (v != kBottom) s.out = v;
    }

    Phase phase_;
    LclDetect detect_;
};

}  // namespace sslcl

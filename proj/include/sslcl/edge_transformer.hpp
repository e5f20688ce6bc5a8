#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sslcl/adversary.hpp"
#include "sslcl/edge_phases.hpp"
#include "sslcl/network.hpp"
#include "sslcl/node_transformer.hpp"
#include "sslcl/pps.hpp"

namespace sslcl {

template <class Payload, class DetectMsg>
struct EdgeMessage {
    DetectMsg detect{};
    PhaseField<Payload> phase;
    Step pps = kHbar;
};

template <class Phase>
struct EdgeState {
    std::vector<Value> out;            ///< per port
    std::vector<unsigned char> wait;   ///< per port
    std::vector<unsigned char> in_w;   ///< per port: announced at step 0
    std::vector<unsigned char> in_s;   ///< per port: member of S_v
    Step step = kHbar;
    typename Phase::Regs regs{};
    Rng pps_rng;
    Rng phase_rng;
};

/// The self-stabilizing edge-LCL algorithm: per-port Detect verdicts, per-port
/// wait flags and a phase simulated on the phase-synchronized undecided edges.
template <class Phase, class Detect>
class EdgeTransformer {
public:
    using State = EdgeState<Phase>;
    using Payload = typename Phase::Payload;
    using Message = EdgeMessage<Payload, typename Detect::Msg>;
    static constexpr ElementKind output_kind = ElementKind::edge;

    EdgeTransformer(Phase phase, Detect detect) : phase_(std::move(phase)), detect_(std::move(detect)) {
        static_assert(Phase::length >= 2, "a phase needs an announcement and a decision step");
    }

    const Phase& phase() const { return phase_; }
    int phase_length() const { return Phase::length; }
    int alphabet_size() const { return phase_.alphabet_size(); }

    State make_state(const StateSeed& seed) const {
        State s;
        const auto d = static_cast<std::size_t>(seed.degree);
        s.out.assign(d, kBottom);
        s.wait.assign(d, 0);
        s.in_w.assign(d, 0);
        s.in_s.assign(d, 0);
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
        if (step == kHbar) std::fill(s.wait.begin(), s.wait.end(), 0);

        std::vector<unsigned char> reset(d, 0);
        for (Port p = 0; p < d; ++p) reset[p] = !detect_.verdict(s.out, p, in[p].detect);
        for (Port p = 0; p < d; ++p) {
            if (reset[p]) {
                s.out[p] = kBottom;
                s.wait[p] = 1;
            }
        }

        if (step == 0) {
            s.regs = typename Phase::Regs{};
            for (Port p = 0; p < d; ++p) {
                s.in_w[p] = !s.wait[p] && s.out[p] == kBottom;
                s.in_s[p] = 0;
                if (s.in_w[p]) {
                    out[p].phase.tag = PhaseField<Payload>::Tag::output;
                    out[p].phase.out = kBottom;
                }
            }
        } else if (step != kHbar) {
            for (Port p = 0; p < d; ++p) {
                if (step == 1) s.in_s[p] = s.in_w[p] && in[p].pps == 0 && in[p].phase.announces_bottom();
                if (s.wait[p] || s.out[p] != kBottom) s.in_s[p] = 0;
            }
            run_phase_step(s, step, ctx, in, out);
        }

        for (Port p = 0; p < d; ++p) {
            out[p].pps = step;
            out[p].detect = detect_.message(s.out, p);
        }
        s.step = (ctx.forced_start() && step == kHbar) ? 0 : next_step(step, Phase::length, s.pps_rng);
    }

    void corrupt(State& s, int degree, unsigned mask, Rng& rng) const {
        const auto d = static_cast<std::size_t>(degree);
        s.out.resize(d, kBottom);
        s.wait.resize(d, 0);
        s.in_w.resize(d, 0);
        s.in_s.resize(d, 0);
        for (std::size_t p = 0; p < d; ++p) {
            if (mask & reg_out) s.out[p] = static_cast<Value>(rng.below(static_cast<std::uint64_t>(phase_.alphabet_size() + 1)));
            if (mask & reg_wait) s.wait[p] = rng.coin();
            if (mask & reg_phase) {
                s.in_w[p] = rng.coin();
                s.in_s[p] = rng.coin();
            }
        }
        if (mask & reg_step) s.step = random_step(Phase::length, rng);
        if (mask & reg_phase) phase_.randomize(s.regs, rng);
    }

    Message random_message(int, Rng& rng) const {
        Message m;
        m.detect = detect_.random_message(rng);
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
        s.out.erase(s.out.begin() + p);
        s.wait.erase(s.wait.begin() + p);
        s.in_w.erase(s.in_w.begin() + p);
        s.in_s.erase(s.in_s.begin() + p);
    }
    void add_port(State& s, Rng& rng) const {
        s.out.push_back(static_cast<Value>(rng.below(static_cast<std::uint64_t>(phase_.alphabet_size() + 1))));
        s.wait.push_back(rng.coin());
        s.in_w.push_back(rng.coin());
        s.in_s.push_back(rng.coin());
    }

    Value output(const State& s, Port p) const { return s.out[p]; }

private:
    void run_phase_step(State& s, Step step, RoundContext& ctx, std::span<const Message> in,
                        std::span<Message> out) const {
        std::vector<Port> ports;
        std::vector<const Payload*> inbox;
        for (Port p = 0; p < in.size(); ++p) {
            if (!s.in_s[p]) continue;
            ports.push_back(p);
            inbox.push_back(in[p].phase.tag == PhaseField<Payload>::Tag::payload ? &in[p].phase.payload : nullptr);
        }
        const EdgePhaseView view{ports, s.out, ctx.delta};
        if (step < Phase::length - 1) {
            std::vector<std::optional<Payload>> sent(ports.size());
            phase_.work(step, s.regs, view, inbox, sent, s.phase_rng);
            for (std::size_t i = 0; i < ports.size(); ++i) {
                if (!sent[i]) continue;
                out[ports[i]].phase.tag = PhaseField<Payload>::Tag::payload;
                out[ports[i]].phase.payload = *sent[i];
            }
            return;
        }
        std::vector<Value> result(ports.size(), kBottom);
        phase_.decide(s.regs, view, inbox, result);
        for (std::size_t i = 0; i < ports.size(); ++i) {
            if (result[i] != kBottom) s.out[ports[i]] = result[i];
        }
    }

    Phase phase_;
    Detect detect_;
};

}  // namespace sslcl

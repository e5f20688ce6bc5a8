#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sslcl/errors.hpp"
#include "sslcl/lcl.hpp"
#include "sslcl/rng.hpp"

namespace sslcl {

/// What a node sees during an edge phase.
struct EdgePhaseView {
    std::span<const Port> s_ports;   ///< phase-synchronized undecided ports, ascending
    std::span<const Value> out;      ///< own output register of every port
    int delta = 0;
};

// An edge phase procedure provides
//   static constexpr int length;
//   Regs, Payload; int alphabet_size() const; LclSpec lcl() const;
//   void work(int step, Regs&, const EdgePhaseView&, std::span<const Payload* const> in,
//             std::span<std::optional<Payload>> out, Rng&) const;     steps 1..length-2
//   void decide(Regs&, const EdgePhaseView&, std::span<const Payload* const> in,
//               std::span<Value> result) const;                       step length-1
//   void randomize(Regs&, Rng&) const; Payload random_payload(Rng&) const;
// Inbox/outbox entries are indexed like view.s_ports.
// An edge detection procedure provides
//   Msg message(std::span<const Value> out, Port p) const;
//   bool verdict(std::span<const Value> out, Port p, const Msg& received) const;
//   Msg random_message(Rng&) const;

inline constexpr Value kMat = 1;
inline constexpr Value kUnm = 2;

struct MatchRegs {
    bool active = false;
    int requested = -1;  ///< port the request went to
    int accepted = -1;   ///< port of the accepted requester
    bool my_hint = false;
    bool partner_hint = false;
};

struct MatchPayload {
    enum class Kind : unsigned char { request, accept };
    Kind kind = Kind::request;
    bool hint = false;
};

/// Maximal matching, Mat = 1, UnM = 2.
struct MatchingPhase {
    static constexpr int length = 4;
    using Regs = MatchRegs;
    using Payload = MatchPayload;

    int alphabet_size() const { return 2; }
    LclSpec lcl() const { return lcls::maximal_matching(); }

    void work(int step, Regs& r, const EdgePhaseView& view, std::span<const Payload* const> in,
              std::span<std::optional<Payload>> out, Rng& rng) const {
        const auto s = view.s_ports.size();
        if (step == 1) {
            r = Regs{};
            r.active = rng.coin();
            for (Value v : view.out) r.my_hint = r.my_hint || v == kMat;
            if (r.active && s > 0) {
                const auto i = static_cast<std::size_t>(rng.below(s));
                r.requested = static_cast<int>(view.s_ports[i]);
                out[i] = Payload{Payload::Kind::request, r.my_hint};
            }
            return;
        }
        if (r.active) return;
        for (std::size_t i = 0; i < s; ++i) {
            if (in[i] != nullptr && in[i]->kind == Payload::Kind::request) {
                r.accepted = static_cast<int>(view.s_ports[i]);
                r.partner_hint = in[i]->hint;
                out[i] = Payload{Payload::Kind::accept, r.my_hint};
                return;
            }
        }
    }

    void decide(Regs& r, const EdgePhaseView& view, std::span<const Payload* const> in, std::span<Value> result) const {
        for (std::size_t i = 0; i < view.s_ports.size(); ++i) {
            const int port = static_cast<int>(view.s_ports[i]);
            if (r.active && port == r.requested) {
                const Payload* reply = in[i];
                if (reply != nullptr && reply->kind == Payload::Kind::accept) {
                    result[i] = (!r.my_hint && !reply->hint) ? kMat : kUnm;
                }
            } else if (!r.active && port == r.accepted) {
                result[i] = (!r.my_hint && !r.partner_hint) ? kMat : kUnm;
            }
        }
    }

    void randomize(Regs& r, Rng& rng) const {
        r.active = rng.coin();
        r.requested = static_cast<int>(rng.below(8)) - 1;
        r.accepted = static_cast<int>(rng.below(8)) - 1;
        r.my_hint = rng.coin();
        r.partner_hint = rng.coin();
    }
    Payload random_payload(Rng& rng) const {
        return {rng.coin() ? Payload::Kind::request : Payload::Kind::accept, rng.coin()};
    }
};

/// Detection with constant-size messages: own register value plus whether any
/// other port holds Mat.
struct MatchingDetect {
    struct Msg {
        Value out = kBottom;
        bool other_mat = false;
    };

    static bool other_mat(std::span<const Value> out, Port p) {
        for (Port w = 0; w < out.size(); ++w) {
            if (w != p && out[w] == kMat) return true;
        }
        return false;
    }

    Msg message(std::span<const Value> out, Port p) const { return {out[p], other_mat(out, p)}; }

    bool verdict(std::span<const Value> out, Port p, const Msg& received) const {
        if (out[p] != received.out) return false;
        if (out[p] == kBottom) return true;
        const bool mat_nearby = received.other_mat || other_mat(out, p);
        return out[p] == kMat ? !mat_nearby : mat_nearby;
    }

    Msg random_message(Rng& rng) const { return {static_cast<Value>(rng.below(3)), rng.coin()}; }
};

/// Indexed by port.
struct EdgeColorRegs {
    std::vector<int> proposal;
    std::vector<int> candidate;
    std::vector<unsigned char> accept;
};

struct EdgeColorPayload {
    int value = 0;
};

/// Proper edge coloring with a palette of size q > 2 delta.
struct EdgeColoringPhase {
    static constexpr int length = 5;
    using Regs = EdgeColorRegs;
    using Payload = EdgeColorPayload;

    int q = 5;

    explicit EdgeColoringPhase(int palette = 5) : q(palette) {}
    int alphabet_size() const { return q; }
    LclSpec lcl() const { return lcls::proper_coloring(q, ElementKind::edge); }

    /// 1 + ((a + b) mod q), symmetric in the two proposals.
    int candidate_color(int a, int b) const { return 1 + (a + b) % q; }

    void work(int step, Regs& r, const EdgePhaseView& view, std::span<const Payload* const> in,
              std::span<std::optional<Payload>> out, Rng& rng) const {
        const auto s = view.s_ports.size();
        if (step == 1) {
            r.proposal.assign(view.out.size(), 0);
            r.candidate.assign(view.out.size(), 0);
            r.accept.assign(view.out.size(), 0);
            for (std::size_t i = 0; i < s; ++i) {
                const int c = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
                r.proposal[view.s_ports[i]] = c;
                out[i] = Payload{c};
            }
            return;
        }
        resize(r, view.out.size());
        if (step == 2) {
            for (std::size_t i = 0; i < s; ++i) {
                const Port p = view.s_ports[i];
                r.candidate[p] = in[i] != nullptr && r.proposal[p] > 0 ? candidate_color(r.proposal[p], in[i]->value) : 0;
                out[i] = Payload{r.candidate[p]};
            }
            return;
        }
        for (std::size_t i = 0; i < s; ++i) {
            const Port p = view.s_ports[i];
            const int c = r.candidate[p];
            bool ok = c >= 1 && c <= q;
            for (std::size_t j = 0; ok && j < s; ++j) ok = j == i || r.candidate[view.s_ports[j]] != c;
            for (Value v : view.out) ok = ok && v != c;
            r.accept[p] = ok;
            out[i] = Payload{ok ? 1 : 0};
        }
    }

    void decide(Regs& r, const EdgePhaseView& view, std::span<const Payload* const> in, std::span<Value> result) const {
        resize(r, view.out.size());
        for (std::size_t i = 0; i < view.s_ports.size(); ++i) {
            const Port p = view.s_ports[i];
            if (r.accept[p] && in[i] != nullptr && in[i]->value == 1) result[i] = r.candidate[p];
        }
    }

    void randomize(Regs& r, Rng& rng) const {
        const auto n = static_cast<std::size_t>(rng.below(8));
        r.proposal.resize(n);
        r.candidate.resize(n);
        r.accept.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            r.proposal[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(q + 1)));
            r.candidate[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(q + 1)));
            r.accept[i] = rng.coin();
        }
    }
    Payload random_payload(Rng& rng) const { return {static_cast<int>(rng.below(static_cast<std::uint64_t>(q + 1)))}; }

private:
    static void resize(Regs& r, std::size_t d) {
        r.proposal.resize(d, 0);
        r.candidate.resize(d, 0);
        r.accept.resize(d, 0);
    }
};

/// Detection for proper edge coloring: own register value plus whether it
/// repeats on another port of the sender.
struct EdgeColoringDetect {
    struct Msg {
        Value out = kBottom;
        bool repeated = false;
    };

    static bool repeated(std::span<const Value> out, Port p) {
        for (Port w = 0; w < out.size(); ++w) {
            if (w != p && out[w] == out[p]) return true;
        }
        return false;
    }

    int q = 5;

    Msg message(std::span<const Value> out, Port p) const { return {out[p], out[p] != kBottom && repeated(out, p)}; }

    bool verdict(std::span<const Value> out, Port p, const Msg& received) const {
        if (out[p] != received.out) return false;
        if (out[p] == kBottom) return true;
        return !received.repeated && !repeated(out, p);
    }

    Msg random_message(Rng& rng) const {
        return {static_cast<Value>(rng.below(static_cast<std::uint64_t>(q + 1))), rng.coin()};
    }
};

}  // namespace sslcl

#pragma once

#include <algorithm>
#include <span>
#include <tuple>
#include <vector>

#include "sslcl/adversary.hpp"
#include "sslcl/clone_simulation.hpp"
#include "sslcl/network.hpp"
#include "sslcl/node_phases.hpp"
#include "sslcl/pps.hpp"

namespace sslcl {

/// Runs a node phase procedure on the clone graph of the line graph, hosted
/// by the edges of the network. Every edge e carries alpha virtual nodes
/// (e, i). Both endpoints keep a copy of the output, wait flag and phase step
/// of each virtual node. Per phase, one endpoint (x) holds the working
/// registers and the other (y) relays packets, so one virtual round costs two
/// host rounds.
///
/// Host step 2j is virtual step j at x; packets sent then reach the consumer
/// either directly (one hop) or through the shared endpoint (two hops) and are
/// consumed at host step 2j + 2. The summary is computed at 2*length - 2 and
/// both endpoints commit at 2*length - 1.
template <class Phase>
class LineSimulation {
public:
    using Payload = typename Phase::Payload;
    using Summary = typename Phase::Summary;
    using Regs = typename Phase::Regs;
    static constexpr ElementKind output_kind = ElementKind::edge;

    /// Where a packet came from, seen from the receiving endpoint: a clique
    /// sibling on the same edge, an edge at the receiver's port, or an edge at
    /// the other endpoint's port.
    struct Label {
        enum class Kind : unsigned char { clique, self, partner };
        Kind kind = Kind::clique;
        Port port = 0;
        int clone = 0;
        friend bool operator==(const Label&, const Label&) = default;
    };

    struct Packet {
        bool via = false;       ///< the receiver relays it to the edge at dest_port (or all others)
        bool dest_all = false;
        Port dest_port = 0;
        int dest_clone = 0;
        Label src;
        int sender_step = 0;
        int hops = 1;
        bool announce = false;
        Payload payload{};
    };

    struct Stored {
        Label src;
        int sender_step = 0;
        int hops = 1;
        int arrival_step = 0;
        bool announce = false;
        Payload payload{};
    };

    struct Info {
        Value out = kBottom;
        Step step = kHbar;
        bool coin_exit = false;
        bool coin_role = false;
        bool ready = true;
        bool has_summary = false;
        Summary summary{};
    };

    struct Message {
        std::vector<Info> el;          ///< per clone
        std::vector<Value> side;       ///< output registers of the sender's other ports, alpha per port
        std::vector<Packet> packets;
    };

    struct Element {
        Value out = kBottom;
        bool wait = false;
        Step step = kHbar;
        bool started = false;
        bool is_x = false;
        Info sent;  ///< coins and ready bit sent in the last round
        Regs regs{};
        std::vector<Label> members;
        bool has_summary = false;
        Summary summary{};
        std::vector<Stored> buffer;
    };

    struct State {
        std::vector<std::vector<Element>> el;       ///< [port][clone]
        std::vector<std::vector<Value>> reported;   ///< [port][clone], sent in the last round
        std::vector<std::tuple<Port, int, Stored>> pending;
        Rng coin_rng;
    };

    LineSimulation(Phase phase, int alpha) : phase_(std::move(phase)), alpha_(alpha) {
        if (alpha_ < 1) throw ConfigError("clone count must be positive");
    }

    const Phase& phase() const { return phase_; }
    int alpha() const { return alpha_; }
    int phase_length() const { return 2 * Phase::length; }
    int inner_alphabet_size() const { return phase_.alphabet_size(); }

    State make_state(const StateSeed& seed) const {
        State s;
        s.el.assign(static_cast<std::size_t>(seed.degree), std::vector<Element>(static_cast<std::size_t>(alpha_)));
        s.reported.assign(static_cast<std::size_t>(seed.degree),
                          std::vector<Value>(static_cast<std::size_t>(alpha_), kBottom));
        s.coin_rng = Rng(seed.master, seed.handle, "pps");
        return s;
    }

    void reseed(State& s, const StateSeed& seed) const { s.coin_rng = Rng(seed.master, seed.handle, "pps"); }

    void compute(State& s, RoundContext& ctx, std::span<const Message> in, std::span<Message> out) const {
        const auto d = in.size();
        const auto a = static_cast<std::size_t>(alpha_);
        const int last = 2 * Phase::length - 1;
        std::vector<std::vector<Packet>> outp(d);

        auto info = [&](std::size_t p, std::size_t i) -> const Info& {
            static const Info fresh{};
            return i < in[p].el.size() ? in[p].el[i] : fresh;
        };

        // Step copies must agree; waits clear at hbar.
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t i = 0; i < a; ++i) {
                Element& e = s.el[p][i];
                if (e.step != info(p, i).step) drop_phase(e, kHbar);
                if (e.step == kHbar) e.wait = false;
            }
        }

        // Detection, on the values both endpoints saw at the end of the last round.
        std::vector<Multiset> decided(d * a, Multiset(phase_.alphabet_size()));
        std::vector<unsigned char> reset(d * a, 0);
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t i = 0; i < a; ++i) {
                Multiset& m = decided[p * a + i];
                collect_decided(s, in, p, i, m);
                const Value o = s.el[p][i].out;
                if (o != info(p, i).out) {
                    reset[p * a + i] = 1;
                } else if (o != kBottom && (o > phase_.alphabet_size() || !lcl_(o, m))) {
                    reset[p * a + i] = 1;
                }
            }
        }
        for (std::size_t k = 0; k < d * a; ++k) {
            if (!reset[k]) continue;
            Element& e = s.el[k / a][k % a];
            e.out = kBottom;
            e.wait = true;
        }

        // Packet delivery and relaying.
        auto deliver = [&](std::size_t q, std::size_t i, Stored st) {
            if (q >= d || i >= a) return;
            Element& e = s.el[q][i];
            if (!e.started || !e.is_x) return;
            st.arrival_step = e.step;
            e.buffer.push_back(st);
        };
        for (auto& [q, i, st] : s.pending) deliver(q, static_cast<std::size_t>(i), st);
        s.pending.clear();
        for (std::size_t p = 0; p < d; ++p) {
            for (const Packet& pk : in[p].packets) {
                if (pk.dest_clone < 0 || static_cast<std::size_t>(pk.dest_clone) >= a) continue;
                const Stored base{pk.src, pk.sender_step, pk.hops, 0, pk.announce, pk.payload};
                if (!pk.via) {
                    deliver(p, static_cast<std::size_t>(pk.dest_clone), base);
                    continue;
                }
                for (std::size_t q = 0; q < d; ++q) {
                    if (q == p || (!pk.dest_all && q != pk.dest_port)) continue;
                    Stored here = base;
                    here.src = Label{Label::Kind::self, static_cast<Port>(p), pk.dest_clone};
                    deliver(q, static_cast<std::size_t>(pk.dest_clone), here);
                    Packet fwd = pk;
                    fwd.via = false;
                    fwd.dest_all = false;
                    fwd.src = Label{Label::Kind::partner, static_cast<Port>(p), pk.dest_clone};
                    fwd.hops = pk.hops + 1;
                    outp[q].push_back(fwd);
                }
            }
        }

        // Work of x.
        std::vector<unsigned char> summary_sent(d * a, 0);
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t i = 0; i < a; ++i) {
                Element& e = s.el[p][i];
                const Step h = e.step;
                if (!e.started || !e.is_x) continue;
                if (e.out != kBottom || e.wait) {
                    e.buffer.clear();
                    continue;
                }
                if (h == 0) {
                    e.regs = Regs{};
                    e.members.clear();
                    e.has_summary = false;
                    Packet pk;
                    pk.announce = true;
                    pk.sender_step = 0;
                    broadcast(s, outp, p, i, d, pk);
                    e.buffer.clear();
                } else if (h >= 2 && h % 2 == 0 && h <= last - 1) {
                    const int j = h / 2;
                    if (j == 1) {
                        e.members.clear();
                        for (const Stored& st : e.buffer) {
                            if (st.announce && st.sender_step == 0 && on_time(st, h) &&
                                std::find(e.members.begin(), e.members.end(), st.src) == e.members.end()) {
                                e.members.push_back(st.src);
                            }
                        }
                    }
                    std::vector<const Payload*> inbox(e.members.size(), nullptr);
                    for (std::size_t k = 0; k < e.members.size(); ++k) {
                        for (const Stored& st : e.buffer) {
                            if (!st.announce && st.sender_step == h - 2 && on_time(st, h) && st.src == e.members[k]) {
                                inbox[k] = &st.payload;
                                break;
                            }
                        }
                    }
                    const PhaseView view{static_cast<int>(e.members.size()), ctx.delta};
                    if (j < Phase::length - 1) {
                        std::vector<Payload> sent(e.members.size());
                        phase_.work(j, e.regs, view, inbox, sent, ctx.element_rng(static_cast<Port>(p), static_cast<int>(i)));
                        for (std::size_t k = 0; k < e.members.size(); ++k) {
                            Packet pk;
                            pk.sender_step = h;
                            pk.payload = sent[k];
                            send_to(s, outp, p, i, e.members[k], pk);
                        }
                    } else {
                        e.summary = phase_.summarize(e.regs, view, inbox);
                        e.has_summary = true;
                        summary_sent[p * a + i] = 1;
                    }
                    e.buffer.clear();
                }
            }
        }

        // Commit at the last step, by both endpoints.
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t i = 0; i < a; ++i) {
                Element& e = s.el[p][i];
                if (e.step != last || !e.started || e.out != kBottom || e.wait || reset[p * a + i]) continue;
                const Info& other = info(p, i);
                const Summary* sum = e.is_x ? (e.has_summary ? &e.summary : nullptr)
                                            : (other.has_summary ? &other.summary : nullptr);
                if (sum == nullptr) continue;
                const Value v = phase_.decide(*sum, decided[p * a + i]);
                if (v != kBottom) e.out = v;
            }
        }

        // Step transitions and the next coins.
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t i = 0; i < a; ++i) {
                Element& e = s.el[p][i];
                const Info& other = info(p, i);
                if (e.step == kHbar) {
                    if (ctx.forced_start() || e.sent.coin_exit != other.coin_exit) {
                        const bool ready = e.sent.ready && other.ready;
                        e.step = 0;
                        if (ctx.forced_start()) {
                            e.started = ready;
                            e.is_x = ctx.lower_endpoint(static_cast<Port>(p));
                        } else {
                            e.started = ready && e.sent.coin_role != other.coin_role;
                            e.is_x = e.sent.coin_role;
                        }
                        e.buffer.clear();
                    }
                } else if (e.step >= last) {
                    drop_phase(e, kHbar);
                } else {
                    ++e.step;
                }
                if (e.step == kHbar) {
                    e.sent.coin_exit = s.coin_rng.coin();
                    e.sent.coin_role = s.coin_rng.coin();
                }
                e.sent.ready = e.out == kBottom && !e.wait;
            }
        }

        // Own output registers of every port, for detection and decisions next
        // round. Both endpoints combine the two reports of the same round.
        for (std::size_t q = 0; q < d; ++q) {
            for (std::size_t i = 0; i < a; ++i) s.reported[q][i] = s.el[q][i].out;
        }

        for (std::size_t p = 0; p < d; ++p) {
            Message& m = out[p];
            m.el.resize(a);
            for (std::size_t i = 0; i < a; ++i) {
                const Element& e = s.el[p][i];
                Info& f = m.el[i];
                f.out = e.out;
                f.step = e.step;
                f.coin_exit = e.sent.coin_exit;
                f.coin_role = e.sent.coin_role;
                f.ready = e.sent.ready;
                f.has_summary = summary_sent[p * a + i] != 0;
                f.summary = e.summary;
            }
            m.side.clear();
            for (std::size_t q = 0; q < d; ++q) {
                if (q == p) continue;
                m.side.insert(m.side.end(), s.reported[q].begin(), s.reported[q].end());
            }
            m.packets = std::move(outp[p]);
        }
    }

    void corrupt(State& s, int degree, unsigned mask, Rng& rng) const {
        const auto d = static_cast<std::size_t>(degree);
        s.el.resize(d, std::vector<Element>(static_cast<std::size_t>(alpha_)));
        s.reported.resize(d, std::vector<Value>(static_cast<std::size_t>(alpha_), kBottom));
        for (auto& row : s.el) {
            for (auto& e : row) corrupt_element(e, mask, rng);
        }
        if (mask & reg_out) {
            for (auto& row : s.reported) {
                for (auto& v : row) v = random_value(rng);
            }
        }
        if (mask & reg_phase) s.pending.clear();
    }

    Message random_message(int degree, Rng& rng) const {
        Message m;
        m.el.resize(static_cast<std::size_t>(alpha_));
        for (auto& f : m.el) {
            f.out = random_value(rng);
            f.step = random_step(2 * Phase::length, rng);
            f.coin_exit = rng.coin();
            f.coin_role = rng.coin();
            f.ready = rng.coin();
            f.has_summary = rng.coin();
            f.summary = phase_.random_summary(rng);
        }
        const auto others = static_cast<std::size_t>(std::max(0, degree - 1)) * static_cast<std::size_t>(alpha_);
        for (std::size_t k = 0; k < others; ++k) m.side.push_back(random_value(rng));
        const auto count = rng.below(3);
        for (std::uint64_t k = 0; k < count; ++k) {
            Packet pk;
            pk.via = rng.coin();
            pk.dest_all = rng.coin();
            pk.dest_port = static_cast<Port>(rng.below(static_cast<std::uint64_t>(std::max(1, degree))));
            pk.dest_clone = static_cast<int>(rng.below(static_cast<std::uint64_t>(alpha_)));
            pk.src = Label{static_cast<typename Label::Kind>(rng.below(3)),
                           static_cast<Port>(rng.below(static_cast<std::uint64_t>(std::max(1, degree)))),
                           static_cast<int>(rng.below(static_cast<std::uint64_t>(alpha_)))};
            pk.sender_step = static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * Phase::length)));
            pk.hops = 1 + static_cast<int>(rng.below(2));
            pk.announce = rng.coin();
            pk.payload = phase_.random_payload(rng);
            m.packets.push_back(pk);
        }
        return m;
    }

    void remove_port(State& s, Port p) const {
        s.el.erase(s.el.begin() + p);
        s.reported.erase(s.reported.begin() + p);
        s.pending.clear();
    }

    void add_port(State& s, Rng& rng) const {
        s.el.emplace_back(static_cast<std::size_t>(alpha_));
        for (auto& e : s.el.back()) corrupt_element(e, reg_all, rng);
        s.reported.emplace_back(static_cast<std::size_t>(alpha_), kBottom);
    }

    /// Output of the edge at port p: the clone value for alpha = 1, else the
    /// clone-combination rule.
    Value output(const State& s, Port p) const {
        const auto& row = s.el[p];
        if (alpha_ == 1) return row[0].out;
        std::vector<Value> v;
        for (const auto& e : row) v.push_back(e.out);
        return combine_clone_outputs(v);
    }
    Value clone_output(const State& s, Port p, int clone) const {
        return s.el[p][static_cast<std::size_t>(clone)].out;
    }
    bool is_x(const State& s, Port p, int clone) const {
        const auto& e = s.el[p][static_cast<std::size_t>(clone)];
        return e.started && e.is_x;
    }
    bool started(const State& s, Port p, int clone) const { return s.el[p][static_cast<std::size_t>(clone)].started; }
    Step step(const State& s, Port p, int clone) const { return s.el[p][static_cast<std::size_t>(clone)].step; }

private:
    static void drop_phase(Element& e, Step to) {
        e.step = to;
        e.started = false;
        e.is_x = false;
        e.buffer.clear();
    }

    /// A packet sent at host step h - 2 arrives one hop later at h - 1 or two
    /// hops later at h. Anything else came from an unsynchronized sender.
    static bool on_time(const Stored& st, int h) {
        return (st.hops == 1 && st.arrival_step == h - 1) || (st.hops == 2 && st.arrival_step == h);
    }

    Value random_value(Rng& rng) const {
        return static_cast<Value>(rng.below(static_cast<std::uint64_t>(phase_.alphabet_size() + 1)));
    }

    void corrupt_element(Element& e, unsigned mask, Rng& rng) const {
        if (mask & reg_out) e.out = random_value(rng);
        if (mask & reg_wait) e.wait = rng.coin();
        if (mask & reg_step) {
            e.step = random_step(2 * Phase::length, rng);
            e.started = rng.coin();
            e.is_x = rng.coin();
            e.sent.coin_exit = rng.coin();
            e.sent.coin_role = rng.coin();
            e.sent.ready = rng.coin();
        }
        if (mask & reg_phase) {
            phase_.randomize(e.regs, rng);
            e.members.clear();
            e.has_summary = rng.coin();
            e.summary = phase_.random_summary(rng);
            e.buffer.clear();
        }
    }

    void add_value(Multiset& m, Value v) const {
        if (v >= 1 && v <= phase_.alphabet_size()) m.add(v);
    }

    /// Decided neighbors of virtual node (edge at p, clone i): consistent
    /// clique siblings plus the registers both endpoints reported.
    void collect_decided(const State& s, std::span<const Message> in, std::size_t p, std::size_t i,
                         Multiset& m) const {
        const auto a = static_cast<std::size_t>(alpha_);
        const auto& other = in[p].el;
        for (std::size_t j = 0; j < a; ++j) {
            if (j == i) continue;
            const Value v = s.el[p][j].out;
            if (j < other.size() && other[j].out == v) add_value(m, v);
        }
        for (std::size_t q = 0; q < s.reported.size(); ++q) {
            if (q != p) add_value(m, s.reported[q][i]);
        }
        const auto& side = in[p].side;
        if (side.size() % a == 0) {
            for (std::size_t k = i; k < side.size(); k += a) add_value(m, side[k]);
        }
    }

    void send_clique(State& s, std::vector<std::vector<Packet>>& outp, std::size_t p, std::size_t i, std::size_t j,
                     Packet pk) const {
        pk.src = Label{Label::Kind::clique, 0, static_cast<int>(i)};
        pk.dest_clone = static_cast<int>(j);
        pk.hops = 1;
        s.pending.emplace_back(static_cast<Port>(p), static_cast<int>(j),
                               Stored{pk.src, pk.sender_step, 1, 0, pk.announce, pk.payload});
        outp[p].push_back(pk);
    }

    void send_self(State& s, std::vector<std::vector<Packet>>& outp, std::size_t p, std::size_t i, std::size_t q,
                   Packet pk) const {
        const Label here{Label::Kind::self, static_cast<Port>(p), static_cast<int>(i)};
        s.pending.emplace_back(static_cast<Port>(q), static_cast<int>(i),
                               Stored{here, pk.sender_step, 1, 0, pk.announce, pk.payload});
        pk.src = Label{Label::Kind::partner, static_cast<Port>(p), static_cast<int>(i)};
        pk.dest_clone = static_cast<int>(i);
        pk.hops = 1;
        outp[q].push_back(pk);
    }

    void broadcast(State& s, std::vector<std::vector<Packet>>& outp, std::size_t p, std::size_t i, std::size_t d,
                   const Packet& pk) const {
        for (std::size_t j = 0; j < static_cast<std::size_t>(alpha_); ++j) {
            if (j != i) send_clique(s, outp, p, i, j, pk);
        }
        for (std::size_t q = 0; q < d; ++q) {
            if (q != p) send_self(s, outp, p, i, q, pk);
        }
        Packet via = pk;
        via.via = true;
        via.dest_all = true;
        via.dest_clone = static_cast<int>(i);
        via.hops = 1;
        outp[p].push_back(via);
    }

    void send_to(State& s, std::vector<std::vector<Packet>>& outp, std::size_t p, std::size_t i, const Label& to,
                 Packet pk) const {
        switch (to.kind) {
            case Label::Kind::clique:
                if (to.clone >= 0 && to.clone < alpha_ && static_cast<std::size_t>(to.clone) != i) {
                    send_clique(s, outp, p, i, static_cast<std::size_t>(to.clone), pk);
                }
                break;
            case Label::Kind::self:
                if (to.port < outp.size() && to.port != p) send_self(s, outp, p, i, to.port, pk);
                break;
            case Label::Kind::partner:
                pk.via = true;
                pk.dest_all = false;
                pk.dest_port = to.port;
                pk.dest_clone = static_cast<int>(i);
                pk.hops = 1;
                outp[p].push_back(pk);
                break;
        }
    }

    Phase phase_;
    int alpha_;
    LclSpec lcl_{phase_.lcl()};
};

}  // namespace sslcl

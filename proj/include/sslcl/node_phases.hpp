#pragma once

#include <span>

#include "sslcl/errors.hpp"
#include "sslcl/lcl.hpp"
#include "sslcl/multiset.hpp"
#include "sslcl/rng.hpp"

namespace sslcl {

/// What a node sees of the phase subgraph H during the working stage.
struct PhaseView {
    int d_h = 0;    ///< number of phase-synchronized undecided neighbors
    int delta = 0;  ///< degree bound of the (simulated) graph
};

// A node phase procedure provides
//   static constexpr int length;               phase length, >= 2
//   Regs, Payload, Summary                      register / message / decision-summary types
//   int alphabet_size() const;
//   LclSpec lcl() const;                        the LCL its Detect checks
//   void work(int step, Regs&, const PhaseView&, std::span<const Payload* const> in,
//             std::span<Payload> out, Rng&) const;           steps 1..length-2
//   Summary summarize(const Regs&, const PhaseView&, std::span<const Payload* const> in) const;
//   Value decide(const Summary&, const Multiset& decided) const;
//   void randomize(Regs&, Rng&) const; Payload random_payload(Rng&) const;
//   Summary random_summary(Rng&) const;
// `in` and `out` are indexed by the node's phase neighbors in port order; a
// missing message shows up as a null pointer. The decision is split so that a
// simulation can compute the summary at one host and commit at two.

inline constexpr Value kIn = 1;
inline constexpr Value kOut = 2;

/// Luby-style marking shared by MIS and incremental coloring.
struct MarkRegs {
    bool marked = false;
    int degree = 0;
};

struct MarkPayload {
    bool marked = false;
    int degree = 0;
    friend bool operator==(const MarkPayload&, const MarkPayload&) = default;
};

struct WinnerSummary {
    bool winner = false;
    friend bool operator==(const WinnerSummary&, const WinnerSummary&) = default;
};

struct MarkingPhase {
    static constexpr int length = 3;
    using Regs = MarkRegs;
    using Payload = MarkPayload;
    using Summary = WinnerSummary;

    void work(int /*step*/, Regs& r, const PhaseView& view, std::span<const Payload* const>,
              std::span<Payload> out, Rng& rng) const {
        r.degree = view.d_h;
        r.marked = view.d_h == 0 || rng.below(static_cast<std::uint64_t>(view.d_h)) == 0;
        for (auto& o : out) o = Payload{r.marked, r.degree};
    }

    /// Marked and strictly larger d_H than every marked phase neighbor.
    Summary summarize(const Regs& r, const PhaseView&, std::span<const Payload* const> in) const {
        if (!r.marked) return {false};
        for (const Payload* p : in) {
            if (p != nullptr && p->marked && p->degree >= r.degree) return {false};
        }
        return {true};
    }

    void randomize(Regs& r, Rng& rng) const {
        r.marked = rng.coin();
        r.degree = static_cast<int>(rng.below(64));
    }
    Payload random_payload(Rng& rng) const { return {rng.coin(), static_cast<int>(rng.below(64))}; }
    Summary random_summary(Rng& rng) const { return {rng.coin()}; }
};

/// Maximal independent set, IN = 1, OUT = 2.
struct MisPhase : MarkingPhase {
    int alphabet_size() const { return 2; }
    LclSpec lcl() const { return lcls::mis(); }

    Value decide(const Summary& s, const Multiset& decided) const {
        if (decided.contains(kIn)) return kOut;
        return s.winner ? kIn : kBottom;
    }
};

/// Incremental c-coloring: winners take the smallest feasible color below c;
/// a node with c-1 decided neighbors colored below c takes c.
struct IncrementalPhase : MarkingPhase {
    int c = 3;

    explicit IncrementalPhase(int colors = 3) : c(colors) {
        if (c < 2) throw ConfigError("incremental coloring needs c >= 2");
    }
    int alphabet_size() const { return c; }
    LclSpec lcl() const { return lcls::incremental_coloring(c); }

    Value decide(const Summary& s, const Multiset& decided) const {
        int low = 0;
        for (Value j = 1; j < c; ++j) low += decided.count(j);
        if (low >= c - 1) return c;
        if (!s.winner) return kBottom;
        int below = 0;
        for (Value i = 1; i < c; ++i) {
            if (!decided.contains(i) && below >= i - 1) return i;
            below += decided.count(i);
        }
        return kBottom;
    }
};

struct ColorRegs {
    int proposal = 0;
    int degree = 0;
};

struct ColorPayload {
    int color = 0;
    friend bool operator==(const ColorPayload&, const ColorPayload&) = default;
};

struct ColorSummary {
    int degree = 0;
    int proposal = 0;
    bool conflict = false;
    friend bool operator==(const ColorSummary&, const ColorSummary&) = default;
};

/// Proper coloring with a palette of size q > delta.
struct ColoringPhase {
    static constexpr int length = 3;
    using Regs = ColorRegs;
    using Payload = ColorPayload;
    using Summary = ColorSummary;

    int q = 3;

    explicit ColoringPhase(int palette = 3) : q(palette) {}
    int alphabet_size() const { return q; }
    LclSpec lcl() const { return lcls::proper_coloring(q); }

    void work(int, Regs& r, const PhaseView& view, std::span<const Payload* const>, std::span<Payload> out,
              Rng& rng) const {
        r.degree = view.d_h;
        r.proposal = view.d_h == 0 ? 0 : 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
        for (auto& o : out) o = Payload{r.proposal};
    }

    Summary summarize(const Regs& r, const PhaseView&, std::span<const Payload* const> in) const {
        Summary s{r.degree, r.proposal, false};
        for (const Payload* p : in) {
            if (p != nullptr && p->color == r.proposal) s.conflict = true;
        }
        return s;
    }

    Value decide(const Summary& s, const Multiset& decided) const {
        if (s.degree == 0) {
            for (Value i = 1; i <= q; ++i) {
                if (!decided.contains(i)) return i;
            }
            return kBottom;
        }
        if (s.conflict || s.proposal < 1 || s.proposal > q || decided.contains(s.proposal)) return kBottom;
        return s.proposal;
    }

    void randomize(Regs& r, Rng& rng) const {
        r.proposal = static_cast<int>(rng.below(static_cast<std::uint64_t>(q + 1)));
        r.degree = static_cast<int>(rng.below(64));
    }
    Payload random_payload(Rng& rng) const { return {static_cast<int>(rng.below(static_cast<std::uint64_t>(q + 1)))}; }
    Summary random_summary(Rng& rng) const {
        return {static_cast<int>(rng.below(64)), static_cast<int>(rng.below(static_cast<std::uint64_t>(q + 1))),
                rng.coin()};
    }
};

}  // namespace sslcl

#include "sslcl/lcl.hpp"

#include <algorithm>
#include <map>

#include "sslcl/errors.hpp"

namespace sslcl {

LclSpec::LclSpec(std::string name, ElementKind kind, int alphabet_size, Predicate predicate,
                 std::vector<std::string> labels)
    : name_(std::move(name)),
      kind_(kind),
      q_(alphabet_size),
      predicate_(std::move(predicate)),
      labels_(std::move(labels)) {
    if (q_ < 1) throw Error("alphabet must be nonempty");
}

std::string LclSpec::label(Value v) const {
    if (v == kBottom) return "_";
    if (v >= 1 && static_cast<std::size_t>(v) <= labels_.size()) return labels_[static_cast<std::size_t>(v - 1)];
    return std::to_string(v);
}

int LclSpec::degree_bound(int delta) const {
    return kind_ == ElementKind::node ? delta : std::max(0, 2 * delta - 2);
}

namespace lcls {

LclSpec mis(ElementKind kind) {
    return LclSpec(
        "mis", kind, 2,
        [](Value o, const Multiset& m) { return o == 1 ? !m.contains(1) : m.contains(1); }, {"IN", "OUT"});
}

LclSpec maximal_matching() {
    return LclSpec(
        "mm", ElementKind::edge, 2,
        [](Value o, const Multiset& m) { return o == 1 ? !m.contains(1) : m.contains(1); }, {"Mat", "UnM"});
}

LclSpec proper_coloring(int palette, ElementKind kind) {
    return LclSpec("proper-coloring", kind, palette, [](Value o, const Multiset& m) { return !m.contains(o); });
}

LclSpec maximal_coloring(int c, ElementKind kind) {
    return LclSpec("maximal-coloring", kind, c, [c](Value o, const Multiset& m) {
        if (o < c) return !m.contains(o);
        for (Value j = 1; j < c; ++j) {
            if (!m.contains(j)) return false;
        }
        return true;
    });
}

LclSpec incremental_coloring(int c, ElementKind kind) {
    return LclSpec("incremental-coloring", kind, c, [c](Value o, const Multiset& m) {
        if (o < c && m.contains(o)) return false;
        int below = 0;
        for (Value j = 1; j < o; ++j) below += m.count(j);
        return below >= o - 1;
    });
}

}  // namespace lcls

bool is_content(const LclSpec& lcl, const Graph& g, const Configuration& c, std::size_t x) {
    const Value o = c.values[x];
    if (o == kBottom) throw UndecidedElement("contentness is defined only for decided elements");
    return lcl(o, neighbor_multiset(g, c, x, lcl.alphabet_size()));
}

std::vector<std::size_t> uncontent(const LclSpec& lcl, const Graph& g, const Configuration& c) {
    std::vector<std::size_t> out;
    for (std::size_t x : decided(g, c)) {
        if (!is_content(lcl, g, c, x)) out.push_back(x);
    }
    return out;
}

bool is_strong(const LclSpec& lcl, const Graph& g, const Configuration& c) {
    return uncontent(lcl, g, c).empty();
}

bool is_legal(const LclSpec& lcl, const Graph& g, const Configuration& c) {
    return is_complete(g, c) && is_strong(lcl, g, c);
}

void for_each_multiset(int alphabet_size, int size, const std::function<void(Multiset&)>& fn) {
    Multiset m(alphabet_size);
    std::function<void(int, int)> rec = [&](Value v, int left) {
        if (v == alphabet_size) {
            for (int i = 0; i < left; ++i) m.add(v);
            fn(m);
            for (int i = 0; i < left; ++i) m.remove(v);
            return;
        }
        for (int take = left; take >= 0; --take) {
            for (int i = 0; i < take; ++i) m.add(v);
            rec(v + 1, left - take);
            for (int i = 0; i < take; ++i) m.remove(v);
        }
    };
    if (size < 0) return;
    if (alphabet_size == 0) {
        if (size == 0) fn(m);
        return;
    }
    rec(1, size);
}

namespace {

bool contains_core(const std::vector<Multiset>& cores, const Multiset& m) {
    return std::any_of(cores.begin(), cores.end(), [&](const Multiset& k) { return k.subset_of(m); });
}

struct ValueScan {
    std::vector<Multiset> cores;
    std::optional<CoverageViolation> violation;
};

/// Enumerates multisets by increasing size up to the bound for output o,
/// extending the bound until T(o) becomes nonempty. Collects cores and the
/// first local convexity violation: some M' outside T(o) containing a core
/// with M' + x inside T(o). A violation exists iff such a pair exists (take a
/// largest violating middle element).
ValueScan scan_value(const LclSpec& lcl, Value o, int bound, bool check_convexity) {
    ValueScan scan;
    const int q = lcl.alphabet_size();
    const int cap = std::max(bound, q);
    for (int size = 0; size <= cap; ++size) {
        if (size > bound && !scan.cores.empty()) break;
        const int limit = scan.cores.empty() ? cap : bound;
        for_each_multiset(q, size, [&](Multiset& m) {
            if (lcl(o, m)) {
                if (!contains_core(scan.cores, m)) scan.cores.push_back(m);
                return;
            }
            if (!check_convexity || scan.violation || size >= limit) return;
            auto below = std::find_if(scan.cores.begin(), scan.cores.end(),
                                      [&](const Multiset& k) { return k.subset_of(m); });
            if (below == scan.cores.end()) return;
            for (Value x = 1; x <= q; ++x) {
                m.add(x);
                if (lcl(o, m)) {
                    Multiset up = m;
                    m.remove(x);
                    scan.violation = CoverageViolation{o, *below, m, up};
                    return;
                }
                m.remove(x);
            }
        });
    }
    return scan;
}

}  // namespace

std::vector<Multiset> compute_cores(const LclSpec& lcl, Value o, int max_size) {
    std::vector<Multiset> cores;
    for (int size = 0; size <= max_size; ++size) {
        for_each_multiset(lcl.alphabet_size(), size, [&](Multiset& m) {
            if (lcl(o, m) && !contains_core(cores, m)) cores.push_back(m);
        });
    }
    return cores;
}

bool SupportiveDigraph::has_arc(Value from, Value to) const {
    return std::binary_search(arcs.begin(), arcs.end(), std::make_pair(from, to));
}

std::vector<std::vector<Multiset>> all_cores(const LclSpec& lcl, int bound) {
    std::vector<std::vector<Multiset>> out;
    for (Value o = 1; o <= lcl.alphabet_size(); ++o) out.push_back(scan_value(lcl, o, bound, false).cores);
    return out;
}

SupportiveDigraph supportive_digraph_from_cores(const std::vector<std::vector<Multiset>>& cores) {
    SupportiveDigraph d;
    d.alphabet_size = static_cast<int>(cores.size());
    for (std::size_t i = 0; i < cores.size(); ++i) {
        for (const Multiset& k : cores[i]) {
            for (Value v = 1; v <= k.alphabet_size(); ++v) {
                if (k.contains(v)) d.arcs.emplace_back(static_cast<Value>(i + 1), v);
            }
        }
    }
    std::sort(d.arcs.begin(), d.arcs.end());
    d.arcs.erase(std::unique(d.arcs.begin(), d.arcs.end()), d.arcs.end());
    return d;
}

SupportiveDigraph build_supportive_digraph(const LclSpec& lcl, int delta) {
    return supportive_digraph_from_cores(all_cores(lcl, lcl.degree_bound(delta)));
}

int influence_number(const SupportiveDigraph& d) {
    const int q = d.alphabet_size;
    std::vector<std::vector<Value>> out(static_cast<std::size_t>(q + 1));
    for (const auto& [a, b] : d.arcs) out[static_cast<std::size_t>(a)].push_back(b);
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<int> state(static_cast<std::size_t>(q + 1), 0);
    std::vector<int> longest(static_cast<std::size_t>(q + 1), 0);
    std::function<void(Value)> visit = [&](Value v) {
        state[v] = 1;
        for (Value w : out[v]) {
            if (state[w] == 1) throw CyclicError("supportive digraph has a cycle through " + std::to_string(w));
            if (state[w] == 0) visit(w);
            longest[v] = std::max(longest[v], longest[w] + 1);
        }
        state[v] = 2;
    };
    int best = 0;
    for (Value v = 1; v <= q; ++v) {
        if (state[v] == 0) visit(v);
        best = std::max(best, longest[v]);
    }
    return best;
}

std::string CoverageViolation::describe() const {
    if (!middle) return "T(" + std::to_string(output) + ") is empty within the bound";
    return "o=" + std::to_string(output) + ": " + lower->to_string() + " <= " + middle->to_string() +
           " <= " + upper->to_string() + " breaks convexity";
}

CoverageResult check_core_coverage(const LclSpec& lcl, int delta) {
    const int bound = lcl.degree_bound(delta);
    for (Value o = 1; o <= lcl.alphabet_size(); ++o) {
        ValueScan scan = scan_value(lcl, o, bound, true);
        if (scan.cores.empty()) return {false, CoverageViolation{o, std::nullopt, std::nullopt, std::nullopt}};
        if (scan.violation) return {false, scan.violation};
    }
    return {true, std::nullopt};
}

}  // namespace sslcl

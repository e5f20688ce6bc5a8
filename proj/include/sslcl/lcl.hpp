#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sslcl/configuration.hpp"
#include "sslcl/graph.hpp"
#include "sslcl/multiset.hpp"

namespace sslcl {

/// A locally checkable labeling: alphabet {1..q} and a predicate l(o, M).
class LclSpec {
public:
    using Predicate = std::function<bool(Value, const Multiset&)>;

    LclSpec(std::string name, ElementKind kind, int alphabet_size, Predicate predicate,
            std::vector<std::string> labels = {});

    const std::string& name() const { return name_; }
    ElementKind kind() const { return kind_; }
    int alphabet_size() const { return q_; }
    bool operator()(Value o, const Multiset& m) const { return predicate_(o, m); }
    std::string label(Value v) const;

    /// Largest neighbor-multiset size in a graph of degree bound delta:
    /// delta for node LCLs, 2*delta-2 for edge LCLs.
    int degree_bound(int delta) const;

private:
    std::string name_;
    ElementKind kind_;
    int q_;
    Predicate predicate_;
    std::vector<std::string> labels_;
};

namespace lcls {

/// IN = 1, OUT = 2.
LclSpec mis(ElementKind kind = ElementKind::node);
/// Mat = 1, UnM = 2; the edge analogue of MIS.
LclSpec maximal_matching();
LclSpec proper_coloring(int palette, ElementKind kind = ElementKind::node);
LclSpec maximal_coloring(int c, ElementKind kind = ElementKind::node);
LclSpec incremental_coloring(int c, ElementKind kind = ElementKind::node);

}  // namespace lcls

/// Whether decided element x is content under c.
bool is_content(const LclSpec& lcl, const Graph& g, const Configuration& c, std::size_t x);
bool is_legal(const LclSpec& lcl, const Graph& g, const Configuration& c);
/// Decided elements that are not content.
std::vector<std::size_t> uncontent(const LclSpec& lcl, const Graph& g, const Configuration& c);
bool is_strong(const LclSpec& lcl, const Graph& g, const Configuration& c);

/// Calls fn(m) for every multiset of exactly the given size, in lexicographic
/// order of the count vector (largest count of value 1 first).
void for_each_multiset(int alphabet_size, int size, const std::function<void(Multiset&)>& fn);

/// Minimal elements of {M : |M| <= max_size, l(o, M)}, ordered by size.
std::vector<Multiset> compute_cores(const LclSpec& lcl, Value o, int max_size);

struct SupportiveDigraph {
    int alphabet_size = 0;
    std::vector<std::pair<Value, Value>> arcs;  ///< sorted (o, o')

    bool has_arc(Value from, Value to) const;
};

/// Cores of every output value, each enumerated up to
/// max(bound, smallest size at which T(o) is nonempty); the extension is
/// capped at bound + alphabet size.
std::vector<std::vector<Multiset>> all_cores(const LclSpec& lcl, int bound);

SupportiveDigraph build_supportive_digraph(const LclSpec& lcl, int delta);
SupportiveDigraph supportive_digraph_from_cores(const std::vector<std::vector<Multiset>>& cores);

/// Length of the longest directed path; throws CyclicError on a cycle.
int influence_number(const SupportiveDigraph& d);

struct CoverageViolation {
    Value output = kBottom;
    /// Empty triple means T(o) has no element within the bound.
    std::optional<Multiset> lower, middle, upper;
    std::string describe() const;
};

struct CoverageResult {
    bool ok = true;
    std::optional<CoverageViolation> counterexample;
};

/// Checks that every T(o) is nonempty and order-convex over all multisets up
/// to the relevant bound (see all_cores for the per-value extension).
CoverageResult check_core_coverage(const LclSpec& lcl, int delta);

}  // namespace sslcl

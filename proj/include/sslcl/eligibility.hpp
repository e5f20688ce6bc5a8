#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sslcl/lcl.hpp"

namespace sslcl {

/// Mechanical part of the eligibility analysis of an LCL.
struct EligibilityReport {
    std::string lcl_name;
    int delta = 1;
    int bound = 0;
    bool core_coverage_ok = false;
    std::optional<CoverageViolation> counterexample;
    std::optional<int> influence_number;  ///< empty when the digraph is cyclic
    std::vector<std::vector<Multiset>> cores;  ///< cores[o-1]
    SupportiveDigraph digraph;
};

EligibilityReport analyze_lcl(const LclSpec& lcl, int delta);

}  // namespace sslcl

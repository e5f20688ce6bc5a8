#include "sslcl/eligibility.hpp"

#include "sslcl/errors.hpp"

namespace sslcl {

EligibilityReport analyze_lcl(const LclSpec& lcl, int delta) {
    EligibilityReport r;
    r.lcl_name = lcl.name();
    r.delta = delta;
    r.bound = lcl.degree_bound(delta);
    const CoverageResult coverage = check_core_coverage(lcl, delta);
    r.core_coverage_ok = coverage.ok;
    r.counterexample = coverage.counterexample;
    r.cores = all_cores(lcl, r.bound);
    r.digraph = supportive_digraph_from_cores(r.cores);
    try {
        r.influence_number = influence_number(r.digraph);
    } catch (const CyclicError&) {
        r.influence_number.reset();
    }
    return r;
}

}  // namespace sslcl

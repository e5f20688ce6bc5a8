// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Optional arguments select criteria by number.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "sslcl/adversary.hpp"
#include "sslcl/edge_phases.hpp"
#include "sslcl/eligibility.hpp"
#include "sslcl/errors.hpp"
#include "sslcl/experiment.hpp"
#include "sslcl/generators.hpp"
#include "sslcl/lcl.hpp"
#include "sslcl/pps.hpp"
#include "sslcl/probe.hpp"
#include "sslcl/registry.hpp"
#include "sslcl/rng.hpp"

using namespace sslcl;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Appends a failure note and marks the outcome failed.
void fail(Outcome& o, const std::string& note) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += note;
}

std::string fmt(double x, int digits = 4) {
    std::ostringstream os;
    os.precision(digits);
    os << std::fixed << x;
    return os.str();
}

// ---------------------------------------------------------------------------
// Independent legality of host outputs.

bool oracle_legal(const Problem& p, const Graph& g, const Configuration& c) {
    const int d = p.delta;
    if (p.kind == ElementKind::node) {
        const auto adj = oracle::node_adjacency(g);
        std::vector<bool> present(g.slot_count());
        for (NodeId u = 0; u < g.slot_count(); ++u) present[u] = g.alive(u);
        if (p.name == "mis") return oracle::is_mis(g, c.values);
        if (p.name == "node-coloring" || p.name == "delta1-coloring") {
            return oracle::is_proper_coloring(g, c.values, d + 1);
        }
        if (p.name == "max-node-coloring") return oracle::is_maximal_coloring(adj, c.values, 3, present);
        if (p.name == "inc-node-coloring") return oracle::is_incremental_coloring(adj, c.values, 3, present);
        return false;
    }
    const auto adj = oracle::edge_adjacency(c);
    const std::vector<bool> present(c.edges.size(), true);
    if (p.name == "mm") return oracle::is_maximal_matching(g, c, kMat, kUnm);
    if (p.name == "edge-coloring") {
        return oracle::is_proper_edge_coloring(c, static_cast<int>(std::ceil(2.5 * d)));
    }
    if (p.name == "2delta1-edge-coloring") return oracle::is_proper_edge_coloring(c, 2 * d - 1);
    if (p.name == "max-edge-coloring") return oracle::is_maximal_coloring(adj, c.values, 3, present);
    if (p.name == "inc-edge-coloring") return oracle::is_incremental_coloring(adj, c.values, 3, present);
    return false;
}

// ---------------------------------------------------------------------------
// 1. Stationary profile of the phase synchronization chain.

Outcome criterion_mixing() {
    Outcome o;
    const MixingProfile prof = mixing_profile(4, 500, 1000000, 2024);
    o.detail = "freq(hbar)=" + fmt(prof.frequency[0]);
    if (prof.frequency[0] < 0.323 || prof.frequency[0] > 0.343) fail(o, "hbar outside [0.323,0.343]");
    for (int j = 0; j < 4; ++j) {
        const double f = prof.frequency[static_cast<std::size_t>(state_index(j))];
        o.detail += " freq(" + std::to_string(j) + ")=" + fmt(f);
        if (f < 0.157 || f > 0.177) fail(o, "step " + std::to_string(j) + " outside [0.157,0.177]");
    }
    return o;
}

// ---------------------------------------------------------------------------
// 2. Phase-start probability at the calibrated horizon.

Outcome criterion_phase_start() {
    Outcome o;
    const long long chains = 100000;
    double worst_margin = 1.0;
    for (int phi = 3; phi <= 5; ++phi) {
        const int tau = calibrated_tau(phi);
        const double bound = 1.0 / (2.0 * phi);
        for (int idx = 0; idx <= phi + 1; ++idx) {
            const Step s = state_at(idx);
            const double p = phase_start_frequency(phi, s, tau, chains, 77 + static_cast<std::uint64_t>(phi));
            const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(chains));
            const double low = p - 3 * sigma;
            worst_margin = std::min(worst_margin, low - bound);
            if (low < bound) {
                fail(o, "phi=" + std::to_string(phi) + " start=" + std::to_string(s) + " p=" + fmt(p) +
                            " below 1/(2phi)+3sigma");
            }
        }
    }
    if (o.pass) o.detail = "worst (p-3sigma)-1/(2phi)=" + fmt(worst_margin);
    return o;
}

// ---------------------------------------------------------------------------
// 3 and 5. Randomized starts on random bounded-degree graphs.

struct RandomStartStats {
    int trials = 0;
    int legal = 0;
    int oracle_legal = 0;
    int timeouts = 0;
    int ts_missing = 0;
    long long strength_violations = 0;
    long long potential_increases = 0;
    long long max_rounds = 0;
    std::map<std::string, int> legal_by_problem;
};

const RandomStartStats& random_start_stats() {
    static const RandomStartStats stats = [] {
        RandomStartStats s;
        const int delta = 6;
        for (const auto& name : problem_names()) {
            const Problem p = make_problem(name, delta);
            int ok = 0;
            for (int t = 0; t < 100; ++t) {
                std::mt19937_64 gen(stream_seed(31, static_cast<std::uint64_t>(t), name));
                const std::size_t n = 2 + gen() % 49;
                const double prob = 0.05 + 0.25 * static_cast<double>(gen() % 1000) / 1000.0;
                const Graph g = make_random_bounded(n, prob, delta, gen());
                TrialOptions opt;
                opt.randomized_start = true;
                opt.check_invariants = true;
                opt.max_rounds = 100000;
                opt.confirm_window = 2 * p.host_phi + 2;
                const TrialResult r = run_trial(p, g, gen(), opt);
                ++s.trials;
                if (r.timeout) {
                    ++s.timeouts;
                    continue;
                }
                s.max_rounds = std::max(s.max_rounds, r.stabilization_round);
                if (r.legal) ++s.legal;
                const bool o = oracle_legal(p, g, r.final_configuration);
                if (o) ++s.oracle_legal;
                if (r.legal && o) ++ok;
                if (!r.ts_reached) ++s.ts_missing;
                s.strength_violations += r.strength_violations;
                s.potential_increases += r.potential_increases;
            }
            s.legal_by_problem[name] = ok;
        }
        return s;
    }();
    return stats;
}

Outcome criterion_random_start() {
    Outcome o;
    const RandomStartStats& s = random_start_stats();
    for (const auto& [name, ok] : s.legal_by_problem) {
        if (ok != 100) fail(o, name + " legal in " + std::to_string(ok) + "/100");
    }
    if (s.timeouts > 0) fail(o, std::to_string(s.timeouts) + " timeouts");
    if (o.pass) {
        o.detail = "10 problems x 100 trials legal (lcl-core and oracles), latest stabilization round " +
                   std::to_string(s.max_rounds);
    }
    return o;
}

Outcome criterion_strength() {
    Outcome o;
    const RandomStartStats& s = random_start_stats();
    if (s.ts_missing > 0) fail(o, std::to_string(s.ts_missing) + " trials never reached t_s");
    if (s.strength_violations > 0) fail(o, std::to_string(s.strength_violations) + " uncontent decided rounds");
    if (s.potential_increases > 0) fail(o, std::to_string(s.potential_increases) + " potential increases");
    if (o.pass) o.detail = std::to_string(s.trials) + " trials: strong and non-increasing potential after t_s";
    return o;
}

// ---------------------------------------------------------------------------
// 4. Locality of a single corrupted node on a long cycle.

/// Distance on the cycle 0-1-...-(n-1)-0.
std::size_t cycle_distance(std::size_t a, std::size_t b, std::size_t n) {
    const std::size_t d = a > b ? a - b : b - a;
    return std::min(d, n - d);
}

Outcome criterion_locality() {
    Outcome o;
    const std::size_t n = 200;
    const Graph g = make_cycle(n);
    for (const auto& [name, radius] : std::vector<std::pair<std::string, std::size_t>>{{"mis", 5}, {"mm", 6}}) {
        const Problem p = make_problem(name, 2);
        const auto initial = initial_legal_simulation(p, g, 5, 100000);
        const Configuration base = initial->configuration();
        long long far_changes = 0;
        std::size_t farthest = 0;
        int legal = 0;
        for (int t = 0; t < 100; ++t) {
            const std::uint64_t seed = stream_seed(41, static_cast<std::uint64_t>(t), "trial");
            auto sim = initial->copy();
            sim->reseed(seed);
            const auto schedule = random_fault_schedule(g, 1, 1, {"corrupt"}, seed, sim->time());
            const NodeId center = schedule.at(0).node;
            sim->apply(schedule.at(0));
            auto observe = [&](const Configuration& now) {
                for (std::size_t x = 0; x < now.values.size(); ++x) {
                    if (now.values[x] == base.values[x]) continue;
                    std::size_t d = 0;
                    if (now.kind == ElementKind::node) {
                        d = cycle_distance(x, center, n);
                    } else {
                        d = std::min(cycle_distance(now.edges[x].a, center, n),
                                     cycle_distance(now.edges[x].b, center, n));
                    }
                    farthest = std::max(farthest, d);
                    if (d >= radius) ++far_changes;
                }
            };
            observe(sim->configuration());
            run_until_stable(*sim, p, 100000, p.confirm_window, observe);
            // Keep watching well past stabilization.
            for (int r = 0; r < 4 * p.confirm_window; ++r) {
                sim->run_round();
                observe(sim->configuration());
            }
            if (is_legal_state(*sim, p, sim->configuration())) ++legal;
        }
        o.detail += name + ": farthest change " + std::to_string(farthest) + ", legal " + std::to_string(legal) +
                    "/100; ";
        if (far_changes > 0) {
            fail(o, name + " changed " + std::to_string(far_changes) + " times at distance >= " +
                        std::to_string(radius));
        }
        if (legal != 100) fail(o, name + " recovered legally in " + std::to_string(legal) + "/100");
    }
    return o;
}

// ---------------------------------------------------------------------------
// 6. Recovery time against the number of faults.

/// Residual sum of squares of the least-squares line through (x, y).
double line_residual(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) rss += std::pow(y[i] - intercept - slope * x[i], 2);
    return rss;
}

Outcome criterion_scaling() {
    Outcome o;
    const Graph g = make_cycle(4096);
    const std::vector<int> ks = {1, 4, 16, 64, 256};
    const int trials = 50;
    for (const std::string name : {"mis", "mm"}) {
        const Problem p = make_problem(name, 2);
        const auto initial = initial_legal_simulation(p, g, 9, 100000);
        std::vector<double> logk, lin, mean;
        for (int k : ks) {
            double sum = 0;
            TrialOptions opt;
            opt.k = k;
            for (int t = 0; t < trials; ++t) {
                const std::uint64_t seed =
                    stream_seed(53, (static_cast<std::uint64_t>(k) << 32) | static_cast<std::uint64_t>(t), "trial");
                const TrialResult r = run_trial_from(p, *initial, seed, opt);
                if (r.timeout || !r.legal) {
                    fail(o, name + " k=" + std::to_string(k) + " trial " + std::to_string(t) + " did not recover");
                    return o;
                }
                sum += static_cast<double>(r.T);
            }
            mean.push_back(sum / trials);
            logk.push_back(std::log(static_cast<double>(k)));
            lin.push_back(static_cast<double>(k));
        }
        const double res_log = line_residual(logk, mean);
        const double res_lin = line_residual(lin, mean);
        const double ratio = mean[4] / mean[2];
        o.detail += name + ": mean T";
        for (double m : mean) o.detail += " " + fmt(m, 1);
        o.detail += ", rss log " + fmt(res_log, 2) + " vs linear " + fmt(res_lin, 2) + ", T256/T16 " + fmt(ratio, 2) +
                    "; ";
        if (!(res_log < res_lin)) fail(o, name + " log-k fit does not beat the linear fit");
        if (ratio > 2.5) fail(o, name + " T(256)/T(16) above 2.5");
    }
    return o;
}

// ---------------------------------------------------------------------------
// 7. Single-phase probe.

Outcome criterion_probe() {
    Outcome o;
    for (const auto& name : problem_names()) {
        const Problem p = make_problem(name, 4);
        ProbeOptions opt;
        opt.trials = 1000;
        opt.seed = 61;
        const ProbeReport r = eligibility_probe(p, opt);
        if (r.respectful_violations != 0) {
            fail(o, name + " " + std::to_string(r.respectful_violations) + " respectful-decision violations");
        }
        if (r.zero_potential_instances == 0 || r.zero_potential_complete != r.zero_potential_instances) {
            fail(o, name + " zero-potential completeness " + std::to_string(r.zero_potential_complete) + "/" +
                        std::to_string(r.zero_potential_instances));
        }
        if (name == "mis" || name == "mm") {
            const double low = r.beta_hat - 2.5758293035489 * r.beta_stderr;
            o.detail += name + " beta=" + fmt(r.beta_hat, 3) + " (99% low " + fmt(low, 3) + ") ";
            if (!(low > 0)) fail(o, name + " beta not positive at 99% confidence");
        }
    }
    return o;
}

// ---------------------------------------------------------------------------
// 8. Influence numbers and core coverage.

Outcome criterion_influence() {
    Outcome o;
    for (int delta = 1; delta <= 6; ++delta) {
        struct Expect {
            std::string label;
            LclSpec lcl;
            int nu;
        };
        std::vector<Expect> expects = {
            {"mis", lcls::mis(), 1},
            {"node-coloring", lcls::proper_coloring(delta + 1), 0},
            {"mm", lcls::maximal_matching(), 1},
            {"edge-coloring", lcls::proper_coloring(static_cast<int>(std::ceil(2.5 * delta)), ElementKind::edge), 0},
        };
        for (int c = 2; c <= delta + 1; ++c) {
            expects.push_back({"inc c=" + std::to_string(c), lcls::incremental_coloring(c), c - 1});
        }
        for (const auto& e : expects) {
            const EligibilityReport r = analyze_lcl(e.lcl, delta);
            if (!r.influence_number || *r.influence_number != e.nu) {
                fail(o, e.label + " delta=" + std::to_string(delta) + " nu=" +
                            (r.influence_number ? std::to_string(*r.influence_number) : "cyclic"));
            }
            if (!r.core_coverage_ok) fail(o, e.label + " delta=" + std::to_string(delta) + " core coverage");
        }
        for (const auto& name : problem_names()) {
            Problem p;
            try {
                p = make_problem(name, delta);
            } catch (const ConfigError&) {
                // The default c = 3 exceeds the range allowed at this degree bound.
                p = make_problem(name, delta, {.c = 2});
            }
            for (const auto& [lcl, bound] :
                 std::vector<std::pair<LclSpec, int>>{{p.lcl, delta}, {p.inner_lcl, inner_degree_bound(p)}}) {
                const EligibilityReport r = analyze_lcl(lcl, bound);
                if (!r.core_coverage_ok || !r.influence_number) {
                    fail(o, name + " (" + lcl.name() + ") delta=" + std::to_string(delta) + " not eligible");
                }
            }
        }
    }
    if (o.pass) o.detail = "nu as expected and core coverage holds for every builtin, delta 1..6";
    return o;
}

// ---------------------------------------------------------------------------
// 9. MIS on the line graph run through the edge simulation.

Outcome criterion_line_graph() {
    Outcome o;
    const Problem line = make_problem("max-edge-coloring", 2, {.c = 2});
    const Problem mis = make_problem("mis", 2);
    int legal = 0;
    int mismatches = 0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(t % 6);
        const bool cycle = (t / 6) % 2 == 1;
        const Graph g = cycle ? make_cycle(n) : make_path(n);
        const std::uint64_t seed = stream_seed(71, static_cast<std::uint64_t>(t), "trial");
        TrialOptions opt;
        opt.randomized_start = true;
        const TrialResult r = run_trial(line, g, seed, opt);
        if (!r.timeout && r.legal && oracle::is_maximal_matching(g, r.final_configuration, 1, 2)) ++legal;

        const Graph lg = line_graph(g).graph;
        auto a = line.make_simulation(g, seed);
        auto b = mis.make_simulation(lg, seed);
        a->hooks().forced_start = true;
        b->hooks().forced_start = true;
        for (int phase = 0; phase < 30; ++phase) {
            for (int r2 = 0; r2 <= line.host_phi; ++r2) a->run_round();
            for (int r2 = 0; r2 <= mis.host_phi; ++r2) b->run_round();
            if (a->inner_configuration().values != b->configuration().values) {
                ++mismatches;
                break;
            }
        }
    }
    o.detail = "maximal matchings " + std::to_string(legal) + "/100, trace mismatches " + std::to_string(mismatches);
    if (legal != 100) fail(o, "not every trial ended in a maximal matching");
    if (mismatches != 0) fail(o, "line simulation diverged from direct execution");
    return o;
}

// ---------------------------------------------------------------------------
// 10. Byte-identical CLI output for repeated seeds.

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion_determinism() {
    Outcome o;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("sslcl_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string cli = SSLCL_CLI_PATH;
    for (const std::string tag : {"a", "b"}) {
        const fs::path d = dir / tag;
        fs::create_directories(d);
        const std::string run = cli +
                                " run --problem mm --graph random --n 80 --p 0.08 --delta 4 --k 3 --trials 4 --seed 11"
                                " --output " + (d / "run.csv").string() + " --trace " + (d / "trace.jsonl").string();
        const std::string scale = cli +
                                  " scale --problem mis --graph cycle --n 256 --k-list 1,4,16 --trials 4 --seed 11"
                                  " --format json --output " + (d / "scale.json").string();
        if (std::system(run.c_str()) != 0) fail(o, "run exited non-zero");
        if (std::system(scale.c_str()) != 0) fail(o, "scale exited non-zero");
    }
    for (const std::string file : {"run.csv", "trace.jsonl", "scale.json"}) {
        const std::string a = slurp(dir / "a" / file);
        const std::string b = slurp(dir / "b" / file);
        if (a.empty()) fail(o, file + " is empty");
        if (a != b) fail(o, file + " differs between repeated runs");
        o.detail += file + " " + std::to_string(a.size()) + " bytes; ";
    }
    fs::remove_all(dir);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"phase-sync stationary profile", criterion_mixing},
        {"phase start at calibrated tau", criterion_phase_start},
        {"randomized start reaches legal state", criterion_random_start},
        {"locality of a single fault", criterion_locality},
        {"strong and monotone after t_s", criterion_strength},
        {"logarithmic recovery scaling", criterion_scaling},
        {"single-phase probe", criterion_probe},
        {"influence numbers and core coverage", criterion_influence},
        {"line-graph simulation", criterion_line_graph},
        {"deterministic CLI output", criterion_determinism},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first << "): "
                  << out.detail << " [" << fmt(secs, 1) << "s]" << std::endl;
        all = all && out.pass;
    }
    return all ? 0 : 1;
}

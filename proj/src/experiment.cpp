#include "sslcl/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>

#include "sslcl/errors.hpp"
#include "sslcl/lcl.hpp"
#include "sslcl/potential.hpp"
#include "sslcl/rng.hpp"

namespace sslcl {

namespace {

/// Elements whose value differs between two configurations, edges appearing
/// in only one of them included.
void collect_changes(const Configuration& before, const Configuration& after, std::vector<unsigned char>& nodes,
                     std::set<EdgeId>& edges) {
    if (after.kind == ElementKind::node) {
        if (nodes.size() < after.values.size()) nodes.resize(after.values.size(), 0);
        for (std::size_t v = 0; v < after.values.size(); ++v) {
            const Value x = v < before.values.size() ? before.values[v] : kBottom;
            if (x != after.values[v]) nodes[v] = 1;
        }
        return;
    }
    if (before.edges == after.edges) {
        for (std::size_t k = 0; k < after.values.size(); ++k) {
            if (before.values[k] != after.values[k]) edges.insert(after.edges[k]);
        }
        return;
    }
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < before.edges.size() || j < after.edges.size()) {
        if (j == after.edges.size() || (i < before.edges.size() && before.edges[i] < after.edges[j])) {
            edges.insert(before.edges[i++]);
        } else if (i == before.edges.size() || after.edges[j] < before.edges[i]) {
            edges.insert(after.edges[j++]);
        } else {
            if (before.values[i] != after.values[j]) edges.insert(after.edges[j]);
            ++i;
            ++j;
        }
    }
}

bool at_least(const Distance& d, int radius) { return !d.has_value() || *d >= static_cast<std::size_t>(radius); }

/// Per-round bookkeeping of a recovery: locality, invariants after t_s, trace.
class Recorder {
public:
    Recorder(const Problem& problem, Simulation& sim, const TrialOptions& options, TrialResult& result,
             Configuration before)
        : problem_(problem), sim_(sim), options_(options), result_(result), prev_(std::move(before)) {}

    long long t_s() const { return result_.t_b + problem_.strong_offset; }

    void observe(const Configuration& now) {
        const long long t = sim_.time();
        collect_changes(prev_, now, changed_nodes_, changed_edges_);
        const bool after_ts = options_.check_invariants && t >= t_s();
        std::optional<long long> pot;
        if (after_ts || options_.record_trace || t == t_s()) {
            const Configuration inner = sim_.inner_configuration();
            const Graph& ig = sim_.inner_graph();
            pot = potential(problem_.inner_potential, ig, inner);
            if (after_ts) {
                if (!is_strong(problem_.inner_lcl, ig, inner)) ++result_.strength_violations;
                if (last_potential_ && *pot > *last_potential_) ++result_.potential_increases;
                last_potential_ = pot;
            }
            if (t == t_s()) {
                result_.ts_reached = true;
                result_.undecided_at_ts = undecided(sim_.graph(), now).size();
                result_.potential_at_ts = *pot;
            }
        }
        if (options_.record_trace) {
            TraceRecord r;
            r.round = t;
            r.num_undecided = undecided(sim_.graph(), now).size();
            r.potential = *pot;
            r.num_uncontent = uncontent(problem_.lcl, sim_.graph(), now).size();
            r.changed_nodes = changed_nodes(prev_, now);
            result_.trace.rounds.push_back(std::move(r));
        }
        prev_ = now;
    }

    long long locality_violations(const std::vector<NodeId>& manipulated) const {
        const auto dist = distances_from(sim_.graph(), manipulated);
        const int radius = problem_.locality_radius;
        long long count = 0;
        for (std::size_t v = 0; v < changed_nodes_.size(); ++v) {
            if (changed_nodes_[v] && v < dist.size() && sim_.graph().alive(static_cast<NodeId>(v)) &&
                at_least(dist[v], radius)) {
                ++count;
            }
        }
        for (const EdgeId& e : changed_edges_) {
            const Distance da = e.a < dist.size() ? dist[e.a] : Distance{};
            const Distance db = e.b < dist.size() ? dist[e.b] : Distance{};
            if (at_least(da, radius) && at_least(db, radius)) ++count;
        }
        return count;
    }

private:
    const Problem& problem_;
    Simulation& sim_;
    const TrialOptions& options_;
    TrialResult& result_;
    Configuration prev_;
    std::vector<unsigned char> changed_nodes_;
    std::set<EdgeId> changed_edges_;
    std::optional<long long> last_potential_;
};

/// Runs from t*_b to stabilization, then on to t_s if needed.
void recover(const Problem& problem, Simulation& sim, const TrialOptions& options, TrialResult& result,
             Recorder& rec) {
    const int window = options.confirm_window > 0 ? options.confirm_window : problem.confirm_window;
    rec.observe(sim.configuration());
    try {
        const long long budget = std::max(0LL, options.max_rounds - (sim.time() - result.t_b));
        const StableResult st = run_until_stable(sim, problem, budget, window,
                                                 [&](const Configuration& c) { rec.observe(c); });
        result.stabilization_round = st.round;
        result.T = st.round - result.t_b;
        result.trace.stabilization_round = st.round;
        while (options.check_invariants && sim.time() <= rec.t_s()) {
            sim.run_round();
            rec.observe(sim.configuration());
        }
        result.legal = is_legal_state(sim, problem, sim.configuration());
    } catch (const Timeout&) {
        result.timeout = true;
        result.legal = false;
    }
    result.final_configuration = sim.configuration();
    result.locality_violations = rec.locality_violations(result.manipulated);
}

}  // namespace

bool is_legal_state(Simulation& sim, const Problem& problem, const Configuration& host) {
    if (!is_legal(problem.lcl, sim.graph(), host)) return false;
    if (problem.layer == Layer::direct) return true;
    return is_legal(problem.inner_lcl, sim.inner_graph(), sim.inner_configuration());
}

StableResult run_until_stable(Simulation& sim, const Problem& problem, long long max_rounds, int confirm_window,
                              const std::function<void(const Configuration&)>& observer) {
    if (confirm_window < 1) throw ConfigError("confirm window must be at least 1");
    if (max_rounds < 0) throw ConfigError("round budget must be non-negative");
    const long long start = sim.time();
    Configuration current = sim.configuration();
    std::optional<long long> candidate;
    if (is_legal_state(sim, problem, current)) candidate = start;
    while (true) {
        if (candidate && sim.time() - *candidate >= confirm_window) return {*candidate, current};
        if (sim.time() - start >= max_rounds) throw Timeout(max_rounds);
        sim.run_round();
        Configuration next = sim.configuration();
        if (observer) observer(next);
        if (next != current) {
            current = std::move(next);
            candidate.reset();
            if (is_legal_state(sim, problem, current)) candidate = sim.time();
        }
    }
}

TrialResult run_faults(const Problem& problem, Simulation& sim, std::uint64_t seed, const TrialOptions& options) {
    TrialResult result;
    result.t_a = sim.time();
    Configuration before = sim.configuration();
    std::vector<AdversaryAction> schedule;
    if (options.k > 0) {
        schedule = random_fault_schedule(sim.graph(), options.k, options.batches, options.kinds,
                                         stream_seed(seed, 0, "faults"), sim.time(), 1);
    }
    Recorder rec(problem, sim, options, result, before);
    std::set<NodeId> manipulated;
    for (const auto& action : schedule) {
        while (sim.time() < action.round) {
            sim.run_round();
            rec.observe(sim.configuration());
        }
        for (NodeId v : manipulated_nodes(action, sim.graph())) manipulated.insert(v);
        sim.apply(action);
    }
    result.manipulated.assign(manipulated.begin(), manipulated.end());
    result.t_b = sim.time();
    recover(problem, sim, options, result, rec);
    return result;
}

TrialResult run_trial(const Problem& problem, const Graph& g, std::uint64_t seed, const TrialOptions& options) {
    auto sim = problem.make_simulation(g, seed);
    if (options.randomized_start) {
        TrialResult result;
        Configuration before = sim->configuration();
        sim->randomize_all();
        const auto nodes = sim->graph().nodes();
        result.manipulated.assign(nodes.begin(), nodes.end());
        Recorder rec(problem, *sim, options, result, std::move(before));
        recover(problem, *sim, options, result, rec);
        return result;
    }
    const int window = options.confirm_window > 0 ? options.confirm_window : problem.confirm_window;
    try {
        run_until_stable(*sim, problem, options.max_rounds, window);
    } catch (const Timeout&) {
        TrialResult result;
        result.timeout = true;
        result.initial_rounds = sim->time();
        return result;
    }
    const long long initial = sim->time();
    TrialResult result = run_faults(problem, *sim, seed, options);
    result.initial_rounds = initial;
    return result;
}

std::unique_ptr<Simulation> initial_legal_simulation(const Problem& problem, const Graph& g, std::uint64_t seed,
                                                     long long max_rounds, int confirm_window) {
    auto sim = problem.make_simulation(g, seed);
    run_until_stable(*sim, problem, max_rounds, confirm_window > 0 ? confirm_window : problem.confirm_window);
    return sim;
}

TrialResult run_trial_from(const Problem& problem, const Simulation& initial, std::uint64_t seed,
                           const TrialOptions& options) {
    auto sim = initial.copy();
    sim->reseed(seed);
    TrialResult result = run_faults(problem, *sim, seed, options);
    result.initial_rounds = initial.time();
    return result;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("a line fit needs at least two points");
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = x[static_cast<std::size_t>(i)];
        b(i) = y[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
    LinearFit f;
    f.intercept = coef(0);
    f.slope = coef(1);
    f.residual = (a * coef - b).squaredNorm();
    return f;
}

Summary summarize(std::vector<double> values) {
    Summary s;
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stderr_mean = std::sqrt(ss / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
    }
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    s.median = values.size() % 2 ? values[m] : (values[m - 1] + values[m]) / 2.0;
    return s;
}

}  // namespace sslcl

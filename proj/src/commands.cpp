#include "sslcl/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "sslcl/eligibility.hpp"
#include "sslcl/errors.hpp"
#include "sslcl/experiment.hpp"
#include "sslcl/generators.hpp"
#include "sslcl/pps.hpp"
#include "sslcl/probe.hpp"
#include "sslcl/registry.hpp"
#include "sslcl/rng.hpp"

namespace sslcl {

namespace {

using ojson = nlohmann::ordered_json;

template <class T>
T get_field(const nlohmann::json& doc, const char* key) {
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("config field '") + key + "' has the wrong type");
    }
}

void read_graph_spec(const nlohmann::json& doc, GraphSpec& g) {
    if (!doc.is_object()) throw ConfigError("config field 'graph' must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "generator") {
            g.generator = get_field<std::string>(doc, "generator");
        } else if (key == "n") {
            g.n = get_field<std::size_t>(doc, "n");
        } else if (key == "rows") {
            g.rows = get_field<std::size_t>(doc, "rows");
        } else if (key == "cols") {
            g.cols = get_field<std::size_t>(doc, "cols");
        } else if (key == "p") {
            g.p = get_field<double>(doc, "p");
        } else if (key == "path") {
            g.path = get_field<std::string>(doc, "path");
        } else {
            throw ConfigError("unknown graph field '" + key + "'");
        }
    }
}

ojson optional_json(const std::optional<int>& v) { return v ? ojson(*v) : ojson(nullptr); }

/// Fields that only name destinations and do not influence any result.
bool is_destination(const std::string& key) { return key == "output" || key == "trace"; }

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void check_common(const ExperimentConfig& c) {
    if (c.trials < 1) throw ConfigError("trials must be at least 1");
    if (c.k < 0) throw ConfigError("k must be non-negative");
    if (c.batches < 1) throw ConfigError("batches must be at least 1");
    if (c.max_rounds < 1) throw ConfigError("max_rounds must be at least 1");
    if (c.confirm_window < 0) throw ConfigError("confirm_window must be non-negative");
    if (c.delta < 0) throw ConfigError("delta must be non-negative");
    if (c.fault_kinds.empty()) throw ConfigError("fault_kinds must not be empty");
    static const std::set<std::string> kinds = {"corrupt", "rewire", "edge"};
    for (const auto& k : c.fault_kinds) {
        if (!kinds.count(k)) throw ConfigError("unknown fault kind '" + k + "'");
    }
}

Problem problem_for(const ExperimentConfig& c, const Graph& g) {
    return make_problem(c.problem, g.degree_bound(), ProblemParams{c.palette, c.c});
}

TrialOptions trial_options(const ExperimentConfig& c, int k) {
    TrialOptions o;
    o.k = k;
    o.batches = c.batches;
    o.kinds = c.fault_kinds;
    o.max_rounds = c.max_rounds;
    o.confirm_window = c.confirm_window;
    o.randomized_start = c.randomized_start;
    return o;
}

ojson base_record(const std::string& type, const ExperimentConfig& c, const std::string& hash) {
    ojson r;
    r["record_type"] = type;
    r["config_hash"] = hash;
    r["seed"] = c.seed;
    return r;
}

/// Aggregate of one (problem, graph, k) point.
struct PointStats {
    int trials = 0;
    int completed = 0;
    int timeouts = 0;
    int legal = 0;
    long long locality_violations = 0;
    std::vector<double> times;

    void add(const TrialResult& r) {
        ++trials;
        if (r.timeout) {
            ++timeouts;
        } else {
            ++completed;
            times.push_back(static_cast<double>(r.T));
            legal += r.legal;
        }
        locality_violations += r.locality_violations;
    }

    /// Every completed trial legal and local.
    bool sound() const { return legal == completed && locality_violations == 0; }

    void fill(ojson& r) const {
        r["trials"] = trials;
        r["completed"] = completed;
        r["timeouts"] = timeouts;
        r["legal_trials"] = legal;
        r["locality_violations"] = locality_violations;
        if (times.empty()) {
            r["mean_T"] = nullptr;
            r["stderr_T"] = nullptr;
            r["median_T"] = nullptr;
        } else {
            const Summary s = summarize(times);
            r["mean_T"] = s.mean;
            r["stderr_T"] = s.stderr_mean;
            r["median_T"] = s.median;
        }
    }
};

/// Runs the fault-free start and returns it, or nullptr after recording a
/// timeout record.
std::unique_ptr<Simulation> initial_or_timeout(const Problem& problem, const Graph& g, const ExperimentConfig& c,
                                               const std::string& hash, CommandOutput& out) {
    try {
        return initial_legal_simulation(problem, g, c.seed, c.max_rounds, c.confirm_window);
    } catch (const Timeout&) {
        ojson r = base_record("initial", c, hash);
        r["problem"] = c.problem;
        r["n"] = g.node_count();
        r["timeout"] = true;
        r["initial_rounds"] = c.max_rounds;
        out.records.push_back(std::move(r));
        out.exit_code = exit_timeout;
        return nullptr;
    }
}

std::string csv_cell(const ojson& v) {
    if (v.is_null()) return "";
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

std::string state_label(Step s) { return s == kHbar ? "hbar" : std::to_string(s); }

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    ExperimentConfig c;
    for (const auto& [key, value] : doc.items()) {
        const char* k = key.c_str();
        if (key == "problem") {
            c.problem = get_field<std::string>(doc, k);
        } else if (key == "graph") {
            read_graph_spec(value, c.graph);
        } else if (key == "delta") {
            c.delta = get_field<int>(doc, k);
        } else if (key == "palette") {
            if (!value.is_null()) c.palette = get_field<int>(doc, k);
        } else if (key == "c") {
            if (!value.is_null()) c.c = get_field<int>(doc, k);
        } else if (key == "k") {
            c.k = get_field<int>(doc, k);
        } else if (key == "k_list") {
            c.k_list = get_field<std::vector<int>>(doc, k);
        } else if (key == "batches") {
            c.batches = get_field<int>(doc, k);
        } else if (key == "fault_kinds") {
            c.fault_kinds = get_field<std::vector<std::string>>(doc, k);
        } else if (key == "trials") {
            c.trials = get_field<int>(doc, k);
        } else if (key == "seed") {
            c.seed = get_field<std::uint64_t>(doc, k);
        } else if (key == "max_rounds") {
            c.max_rounds = get_field<long long>(doc, k);
        } else if (key == "confirm_window") {
            c.confirm_window = get_field<int>(doc, k);
        } else if (key == "randomized_start") {
            c.randomized_start = get_field<bool>(doc, k);
        } else if (key == "output") {
            c.output = get_field<std::string>(doc, k);
        } else if (key == "format") {
            c.format = get_field<std::string>(doc, k);
        } else if (key == "trace") {
            c.trace = get_field<std::string>(doc, k);
        } else if (key == "phi") {
            c.phi = get_field<int>(doc, k);
        } else if (key == "warmup") {
            c.warmup = get_field<int>(doc, k);
        } else if (key == "samples") {
            c.samples = get_field<long long>(doc, k);
        } else if (key == "probe_trials") {
            c.probe_trials = get_field<int>(doc, k);
        } else if (key == "assert_scaling") {
            c.assert_scaling = get_field<bool>(doc, k);
        } else {
            throw ConfigError("unknown config field '" + key + "'");
        }
    }
    if (c.format != "csv" && c.format != "json") throw ConfigError("format must be csv or json");
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    try {
        return config_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
    ojson j;
    j["problem"] = c.problem;
    j["graph"] = {{"generator", c.graph.generator}, {"n", c.graph.n},       {"rows", c.graph.rows},
                  {"cols", c.graph.cols},           {"p", c.graph.p},       {"path", c.graph.path}};
    j["delta"] = c.delta;
    j["palette"] = optional_json(c.palette);
    j["c"] = optional_json(c.c);
    j["k"] = c.k;
    j["k_list"] = c.k_list;
    j["batches"] = c.batches;
    j["fault_kinds"] = c.fault_kinds;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["max_rounds"] = c.max_rounds;
    j["confirm_window"] = c.confirm_window;
    j["randomized_start"] = c.randomized_start;
    j["output"] = c.output;
    j["format"] = c.format;
    j["trace"] = c.trace;
    j["phi"] = c.phi;
    j["warmup"] = c.warmup;
    j["samples"] = c.samples;
    j["probe_trials"] = c.probe_trials;
    j["assert_scaling"] = c.assert_scaling;
    return j;
}

std::string config_hash(const ExperimentConfig& c) {
    ojson j = config_to_json(c);
    for (auto it = j.begin(); it != j.end();) {
        it = is_destination(it.key()) ? j.erase(it) : std::next(it);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
    return buf;
}

Graph build_graph(const ExperimentConfig& c) {
    const GraphSpec& s = c.graph;
    Graph g;
    if (s.generator == "cycle") {
        if (s.n < 3) throw ConfigError("a cycle needs at least 3 nodes");
        g = make_cycle(s.n);
    } else if (s.generator == "path") {
        if (s.n < 1) throw ConfigError("a path needs at least 1 node");
        g = make_path(s.n);
    } else if (s.generator == "grid") {
        if (s.rows < 1 || s.cols < 1) throw ConfigError("a grid needs at least one row and column");
        g = make_grid(s.rows, s.cols);
    } else if (s.generator == "star") {
        g = make_star(s.n);
    } else if (s.generator == "complete") {
        if (s.n < 1) throw ConfigError("a complete graph needs at least 1 node");
        g = make_complete(s.n);
    } else if (s.generator == "random") {
        if (s.n < 1) throw ConfigError("a random graph needs at least 1 node");
        if (s.p < 0 || s.p > 1) throw ConfigError("edge probability must lie in [0, 1]");
        g = make_random_bounded(s.n, s.p, c.delta > 0 ? c.delta : 6, stream_seed(c.seed, 0, "graph"));
    } else if (s.generator == "edge-list") {
        if (s.path.empty()) throw ConfigError("edge-list graphs need graph.path");
        const EdgeList edges = read_edge_list(s.path);
        Graph tmp = Graph::build(edges, 1 << 20);
        g = Graph::build(edges, std::max(1, tmp.max_degree()));
    } else {
        throw ConfigError("unknown graph generator '" + s.generator + "'");
    }
    if (c.delta > 0) {
        if (g.max_degree() > c.delta) throw ConfigError("graph exceeds the configured degree bound");
        g.set_degree_bound(c.delta);
    }
    return g;
}

void write_records(std::ostream& os, const std::vector<nlohmann::ordered_json>& records, const std::string& format) {
    if (format == "json") {
        ojson arr = ojson::array();
        for (const auto& r : records) arr.push_back(r);
        os << arr.dump(2) << '\n';
        return;
    }
    if (format != "csv") throw ConfigError("format must be csv or json");
    std::vector<std::string> columns;
    for (const auto& r : records) {
        for (auto it = r.begin(); it != r.end(); ++it) {
            if (std::find(columns.begin(), columns.end(), it.key()) == columns.end()) columns.push_back(it.key());
        }
    }
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& r : records) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) os << ',';
            if (r.contains(columns[i])) os << csv_cell(r.at(columns[i]));
        }
        os << '\n';
    }
}

CommandOutput cmd_run(const ExperimentConfig& c, std::ostream* trace_out) {
    check_common(c);
    const std::string hash = config_hash(c);
    const Graph g = build_graph(c);
    if (static_cast<std::size_t>(c.k) > g.node_count()) {
        throw KTooLarge("k=" + std::to_string(c.k) + " exceeds the node count " + std::to_string(g.node_count()));
    }
    const Problem problem = problem_for(c, g);
    CommandOutput out;
    std::unique_ptr<Simulation> initial;
    if (!c.randomized_start) {
        initial = initial_or_timeout(problem, g, c, hash, out);
        if (!initial) return out;
    }
    TrialOptions opts = trial_options(c, c.k);
    opts.record_trace = trace_out != nullptr;
    PointStats stats;
    for (int t = 0; t < c.trials; ++t) {
        const std::uint64_t trial_seed = stream_seed(c.seed, static_cast<std::uint64_t>(t), "trial");
        const TrialResult r =
            c.randomized_start ? run_trial(problem, g, trial_seed, opts) : run_trial_from(problem, *initial, trial_seed, opts);
        stats.add(r);
        ojson rec = base_record("trial", c, hash);
        rec["problem"] = c.problem;
        rec["n"] = g.node_count();
        rec["delta"] = g.degree_bound();
        rec["k"] = c.k;
        rec["trial"] = t;
        rec["timeout"] = r.timeout;
        rec["initial_rounds"] = r.initial_rounds;
        rec["t_b"] = r.t_b;
        rec["stabilization_round"] = r.timeout ? ojson(nullptr) : ojson(r.stabilization_round);
        rec["T"] = r.timeout ? ojson(nullptr) : ojson(r.T);
        rec["undecided_at_ts"] = r.ts_reached ? ojson(r.undecided_at_ts) : ojson(nullptr);
        rec["potential_at_ts"] = r.ts_reached ? ojson(r.potential_at_ts) : ojson(nullptr);
        rec["locality_violations"] = r.locality_violations;
        rec["legal"] = r.legal;
        out.records.push_back(std::move(rec));
        if (trace_out) {
            ojson context;
            context["config_hash"] = hash;
            context["seed"] = c.seed;
            context["trial"] = t;
            write_trace_jsonl(*trace_out, r.trace, context);
        }
    }
    ojson summary = base_record("summary", c, hash);
    summary["problem"] = c.problem;
    summary["n"] = g.node_count();
    summary["delta"] = g.degree_bound();
    summary["k"] = c.k;
    stats.fill(summary);
    out.records.push_back(std::move(summary));
    if (!stats.sound()) {
        out.exit_code = exit_assertion_failed;
    } else if (stats.timeouts > 0) {
        out.exit_code = exit_timeout;
    }
    return out;
}

CommandOutput cmd_scale(const ExperimentConfig& c) {
    check_common(c);
    const std::set<int> distinct(c.k_list.begin(), c.k_list.end());
    if (distinct.size() < 3) throw ConfigError("scale needs at least 3 distinct k values");
    if (*distinct.begin() < 1) throw ConfigError("scale needs every k to be at least 1");
    if (c.randomized_start) throw ConfigError("scale measures recovery from k faults; randomized_start is not allowed");
    const std::string hash = config_hash(c);
    const Graph g = build_graph(c);
    if (static_cast<std::size_t>(*distinct.rbegin()) > g.node_count()) {
        throw KTooLarge("k=" + std::to_string(*distinct.rbegin()) + " exceeds the node count " +
                        std::to_string(g.node_count()));
    }
    const Problem problem = problem_for(c, g);
    CommandOutput out;
    const auto initial = initial_or_timeout(problem, g, c, hash, out);
    if (!initial) return out;

    std::vector<double> xs_log;
    std::vector<double> xs_lin;
    std::vector<double> ys;
    bool sound = true;
    int timeouts = 0;
    for (std::size_t i = 0; i < c.k_list.size(); ++i) {
        const int k = c.k_list[i];
        const TrialOptions opts = trial_options(c, k);
        PointStats stats;
        for (int t = 0; t < c.trials; ++t) {
            const std::uint64_t handle = (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(t);
            stats.add(run_trial_from(problem, *initial, stream_seed(c.seed, handle, "trial"), opts));
        }
        ojson rec = base_record("point", c, hash);
        rec["problem"] = c.problem;
        rec["n"] = g.node_count();
        rec["delta"] = g.degree_bound();
        rec["k"] = k;
        rec["initial_rounds"] = initial->time();
        stats.fill(rec);
        out.records.push_back(std::move(rec));
        sound = sound && stats.sound();
        timeouts += stats.timeouts;
        if (!stats.times.empty()) {
            xs_log.push_back(std::log(static_cast<double>(k)));
            xs_lin.push_back(static_cast<double>(k));
            ys.push_back(summarize(stats.times).mean);
        }
    }
    ojson fit = base_record("fit", c, hash);
    fit["problem"] = c.problem;
    fit["n"] = g.node_count();
    fit["delta"] = g.degree_bound();
    bool log_better = false;
    if (std::set<double>(xs_lin.begin(), xs_lin.end()).size() >= 2) {
        const LinearFit lf = fit_line(xs_log, ys);
        const LinearFit kf = fit_line(xs_lin, ys);
        fit["log_intercept"] = lf.intercept;
        fit["log_slope"] = lf.slope;
        fit["log_residual"] = lf.residual;
        fit["linear_intercept"] = kf.intercept;
        fit["linear_slope"] = kf.slope;
        fit["linear_residual"] = kf.residual;
        log_better = lf.residual < kf.residual;
    }
    fit["log_fit_better"] = log_better;
    out.records.push_back(std::move(fit));
    if (!sound || (c.assert_scaling && !log_better)) {
        out.exit_code = exit_assertion_failed;
    } else if (timeouts > 0) {
        out.exit_code = exit_timeout;
    }
    return out;
}

CommandOutput cmd_mix(const ExperimentConfig& c) {
    if (c.samples < 1) throw ConfigError("samples must be positive");
    const std::string hash = config_hash(c);
    const MixingProfile prof = mixing_profile(c.phi, c.warmup, c.samples, c.seed);
    CommandOutput out;
    for (int i = 0; i <= c.phi; ++i) {
        ojson r;
        r["state"] = state_label(state_at(i));
        r["frequency"] = prof.frequency[static_cast<std::size_t>(i)];
        r["stderr"] = prof.standard_error[static_cast<std::size_t>(i)];
        r["phi"] = c.phi;
        r["warmup"] = c.warmup;
        r["samples"] = c.samples;
        r["config_hash"] = hash;
        r["seed"] = c.seed;
        out.records.push_back(std::move(r));
    }
    return out;
}

CommandOutput cmd_check_eligibility(const ExperimentConfig& c) {
    if (c.delta < 1) throw ConfigError("check-eligibility needs delta >= 1");
    if (c.probe_trials < 0) throw ConfigError("probe_trials must be non-negative");
    const std::string hash = config_hash(c);
    const Problem problem = make_problem(c.problem, c.delta, ProblemParams{c.palette, c.c});
    const int inner_delta = inner_degree_bound(problem);
    const EligibilityReport rep = analyze_lcl(problem.inner_lcl, inner_delta);

    ojson r;
    r["config_hash"] = hash;
    r["seed"] = c.seed;
    r["problem"] = c.problem;
    r["delta"] = c.delta;
    r["lcl"] = rep.lcl_name;
    r["lcl_degree_bound"] = inner_delta;
    r["multiset_bound"] = rep.bound;
    r["core_coverage_ok"] = rep.core_coverage_ok;
    r["counterexample"] = rep.counterexample ? ojson(rep.counterexample->describe()) : ojson(nullptr);
    r["influence_number"] = rep.influence_number ? ojson(*rep.influence_number) : ojson("cyclic");
    ojson cores = ojson::object();
    for (std::size_t o = 0; o < rep.cores.size(); ++o) {
        std::vector<std::vector<int>> vecs;
        for (const Multiset& m : rep.cores[o]) vecs.push_back(m.counts());
        std::sort(vecs.begin(), vecs.end());
        cores[std::to_string(o + 1)] = vecs;
    }
    r["cores"] = cores;
    ojson arcs = ojson::array();
    for (const auto& [from, to] : rep.digraph.arcs) arcs.push_back({from, to});
    r["digraph"] = {{"alphabet_size", rep.digraph.alphabet_size}, {"arcs", arcs}};
    r["phase_length"] = problem.inner_phi;

    bool sound = rep.core_coverage_ok && rep.influence_number.has_value();
    if (c.probe_trials > 0) {
        ProbeOptions po;
        po.trials = c.probe_trials;
        po.seed = c.seed;
        const ProbeReport pr = eligibility_probe(problem, po);
        ojson p;
        p["trials"] = pr.trials;
        p["respectful_violations"] = pr.respectful_violations;
        p["endpoint_disagreements"] = pr.endpoint_disagreements;
        p["zero_potential_instances"] = pr.zero_potential_instances;
        p["zero_potential_complete"] = pr.zero_potential_complete;
        p["positive_potential_instances"] = pr.positive_potential_instances;
        p["beta_hat"] = pr.beta_hat;
        p["beta_stderr"] = pr.beta_stderr;
        p["beta_ci99_low"] = pr.beta_ci99_low;
        p["beta_ci99_high"] = pr.beta_ci99_high;
        p["violation_examples"] = pr.violation_examples;
        r["probe"] = p;
        sound = sound && pr.respectful_violations == 0 && pr.zero_potential_complete == pr.zero_potential_instances;
    } else {
        r["probe"] = nullptr;
    }
    CommandOutput out;
    out.records.push_back(std::move(r));
    if (!sound) out.exit_code = exit_assertion_failed;
    return out;
}

}  // namespace sslcl

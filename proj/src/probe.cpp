#include "sslcl/probe.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sslcl/errors.hpp"
#include "sslcl/generators.hpp"
#include "sslcl/lcl.hpp"
#include "sslcl/potential.hpp"
#include "sslcl/rng.hpp"

namespace sslcl {

namespace {

constexpr double kZ99 = 2.5758293035489004;

/// Whether x and every decided neighbor of x are content (x may be undecided).
bool locally_strong(const LclSpec& lcl, const Graph& g, const Configuration& c, std::size_t x) {
    if (c.values[x] != kBottom && !is_content(lcl, g, c, x)) return false;
    for (std::size_t y : neighbor_elements(g, c, x)) {
        if (c.values[y] != kBottom && !is_content(lcl, g, c, y)) return false;
    }
    return true;
}

Configuration random_strong(const LclSpec& lcl, const Graph& g, Configuration c, double density, Rng& rng) {
    std::vector<std::size_t> order = domain(g, c);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t x : order) {
        if (!rng.bernoulli(density)) continue;
        c.values[x] = static_cast<Value>(1 + rng.below(static_cast<std::uint64_t>(lcl.alphabet_size())));
        if (!locally_strong(lcl, g, c, x)) c.values[x] = kBottom;
    }
    return c;
}

/// Removes undecided elements: each with probability p, or (cover mode)
/// enough of them that no two remaining undecided elements are adjacent.
void delete_undecided(Graph& g, Configuration& c, bool cover, Rng& rng) {
    std::vector<std::size_t> victims;
    if (c.kind == ElementKind::node) {
        for (std::size_t v : undecided(g, c)) {
            if (cover) {
                bool clash = false;
                for (NodeId u : g.neighbors(static_cast<NodeId>(v))) clash = clash || c.values[u] == kBottom;
                if (clash) g.remove_node(static_cast<NodeId>(v));
            } else if (rng.coin()) {
                g.remove_node(static_cast<NodeId>(v));
            }
        }
        for (std::size_t v = 0; v < c.values.size(); ++v) {
            if (!g.alive(static_cast<NodeId>(v))) c.values[v] = kBottom;
        }
        return;
    }
    Configuration kept;
    kept.kind = ElementKind::edge;
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
        const bool drop = c.values[k] == kBottom && (cover || rng.coin());
        if (drop) {
            g.remove_edge(c.edges[k].a, c.edges[k].b);
        } else {
            kept.edges.push_back(c.edges[k]);
            kept.values.push_back(c.values[k]);
        }
    }
    c = std::move(kept);
}

}  // namespace

ProbeReport eligibility_probe(const Problem& problem, const ProbeOptions& options) {
    if (options.trials < 1) throw ConfigError("probe needs at least one trial");
    if (options.min_nodes < 1 || options.max_nodes < options.min_nodes) throw ConfigError("bad probe node range");
    ProbeReport report;
    report.problem = problem.name;
    report.delta = problem.delta;
    report.trials = options.trials;
    std::vector<double> reductions;
    for (int t = 0; t < options.trials; ++t) {
        Rng rng(options.seed, static_cast<std::uint64_t>(t), "probe");
        const auto n = static_cast<std::size_t>(rng.between(options.min_nodes, options.max_nodes));
        const Graph host = make_random_bounded(n, options.edge_probability, problem.delta, rng.next());
        Graph g = problem.inner_graph(host);
        Configuration c = problem.inner_kind == ElementKind::node ? Configuration::nodes_bottom(g)
                                                                   : Configuration::edges_bottom(g);
        const int mode = t % 4;
        if (mode != 0) c = random_strong(problem.inner_lcl, g, c, rng.unit(), rng);
        if (mode >= 2) delete_undecided(g, c, mode == 3, rng);
        if (!is_strong(problem.inner_lcl, g, c)) throw Error("probe sampled a configuration that is not strong");

        const long long before = potential(problem.inner_potential, g, c);
        auto runner = problem.make_phase_runner(g, rng.next());
        const Configuration after = runner->run(g, c);
        report.endpoint_disagreements += static_cast<long long>(runner->disagreements());
        report.respectful_violations += static_cast<long long>(runner->disagreements());

        for (std::size_t x : domain(g, c)) {
            bool bad = false;
            if (c.values[x] != kBottom) {
                bad = after.values[x] != c.values[x] || !is_content(problem.inner_lcl, g, after, x);
            } else if (after.values[x] != kBottom) {
                bad = !is_content(problem.inner_lcl, g, after, x);
            }
            if (!bad) continue;
            ++report.respectful_violations;
            if (report.violation_examples.size() < 5) {
                std::ostringstream os;
                os << "trial " << t << ": element " << x << " " << c.values[x] << " -> " << after.values[x];
                report.violation_examples.push_back(os.str());
            }
        }
        if (before == 0) {
            ++report.zero_potential_instances;
            if (is_complete(g, after)) ++report.zero_potential_complete;
        } else {
            ++report.positive_potential_instances;
            const long long now = potential(problem.inner_potential, g, after);
            reductions.push_back(static_cast<double>(before - now) / static_cast<double>(before));
        }
    }
    if (!reductions.empty()) {
        double sum = 0;
        for (double r : reductions) sum += r;
        report.beta_hat = sum / static_cast<double>(reductions.size());
        if (reductions.size() > 1) {
            double ss = 0;
            for (double r : reductions) ss += (r - report.beta_hat) * (r - report.beta_hat);
            report.beta_stderr = std::sqrt(ss / static_cast<double>(reductions.size() - 1) /
                                           static_cast<double>(reductions.size()));
        }
        report.beta_ci99_low = report.beta_hat - kZ99 * report.beta_stderr;
        report.beta_ci99_high = report.beta_hat + kZ99 * report.beta_stderr;
    }
    return report;
}

}  // namespace sslcl

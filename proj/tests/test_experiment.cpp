#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "sslcl/errors.hpp"
#include "sslcl/experiment.hpp"
#include "sslcl/generators.hpp"
#include "sslcl/trace.hpp"

using namespace sslcl;

TEST(FitLine, ExactLine) {
    const LinearFit f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(f.intercept, 1.0, 1e-12);
    EXPECT_NEAR(f.slope, 2.0, 1e-12);
    EXPECT_NEAR(f.residual, 0.0, 1e-18);
}

TEST(FitLine, MatchesClosedForm) {
    const std::vector<double> x = {0.0, 1.5, 2.7, 4.1, 5.5, 7.2};
    const std::vector<double> y = {1.1, 2.0, 4.2, 3.9, 6.8, 7.1};
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
    const LinearFit f = fit_line(x, y);
    EXPECT_NEAR(f.slope, slope, 1e-10);
    EXPECT_NEAR(f.intercept, intercept, 1e-10);
    EXPECT_NEAR(f.residual, rss, 1e-10);
}

TEST(FitLine, NeedsTwoPoints) { EXPECT_THROW(fit_line({1}, {1}), ConfigError); }

TEST(Summarize, Examples) {
    const Summary odd = summarize({3, 1, 2});
    EXPECT_EQ(odd.count, 3u);
    EXPECT_DOUBLE_EQ(odd.mean, 2.0);
    EXPECT_DOUBLE_EQ(odd.median, 2.0);
    EXPECT_NEAR(odd.stderr_mean, 1.0 / std::sqrt(3.0), 1e-12);
    const Summary even = summarize({4, 1, 2, 3});
    EXPECT_DOUBLE_EQ(even.median, 2.5);
    EXPECT_EQ(summarize({}).count, 0u);
}

TEST(RunTrial, CorruptedNodesRecoverLegally) {
    const Problem p = make_problem("mis", 2);
    const Graph g = make_cycle(40);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        TrialOptions o;
        o.k = 3;
        o.check_invariants = true;
        const TrialResult r = run_trial(p, g, seed, o);
        ASSERT_FALSE(r.timeout);
        EXPECT_EQ(r.manipulated.size(), 3u);
        EXPECT_TRUE(r.legal);
        EXPECT_GE(r.T, 0);
        EXPECT_EQ(r.t_b, r.t_a);
        EXPECT_TRUE(r.ts_reached);
        EXPECT_EQ(r.strength_violations, 0);
        EXPECT_EQ(r.potential_increases, 0);
        EXPECT_EQ(r.locality_violations, 0);
    }
}

TEST(RunTrial, BatchesSpreadTheFaults) {
    const Problem p = make_problem("mis", 2);
    TrialOptions o;
    o.k = 6;
    o.batches = 3;
    const TrialResult r = run_trial(p, make_cycle(40), 2, o);
    ASSERT_FALSE(r.timeout);
    EXPECT_EQ(r.t_b - r.t_a, 2);
    EXPECT_EQ(r.manipulated.size(), 6u);
}

TEST(RunTrial, RandomizedStartManipulatesEveryNode) {
    const Problem p = make_problem("mm", 3);
    const Graph g = make_random_bounded(20, 0.2, 3, 5);
    TrialOptions o;
    o.randomized_start = true;
    const TrialResult r = run_trial(p, g, 4, o);
    ASSERT_FALSE(r.timeout);
    EXPECT_EQ(r.manipulated.size(), g.node_count());
    EXPECT_EQ(r.t_b, 0);
    EXPECT_TRUE(r.legal);
}

TEST(Trace, ChangedNodesOfEdgeConfigurations) {
    const Graph g = make_path(4);
    Configuration a = Configuration::edges_bottom(g);
    Configuration b = a;
    b.values[1] = 1;
    EXPECT_EQ(changed_nodes(a, b), (std::vector<NodeId>{1, 2}));
    EXPECT_TRUE(changed_nodes(a, a).empty());
}

TEST(Trace, JsonLinesKeysAndContext) {
    RunTrace t;
    t.rounds.push_back({5, 2, 7, 1, {3, 4}});
    t.rounds.push_back({6, 0, 0, 0, {}});
    nlohmann::ordered_json ctx;
    ctx["config_hash"] = "abc";
    ctx["seed"] = 9;
    std::ostringstream os;
    write_trace_jsonl(os, t, ctx);
    std::istringstream in(os.str());
    std::string line;
    std::vector<nlohmann::ordered_json> rows;
    while (std::getline(in, line)) rows.push_back(nlohmann::ordered_json::parse(line));
    ASSERT_EQ(rows.size(), 2u);
    std::vector<std::string> keys;
    for (const auto& [k, v] : rows[0].items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"round", "num_undecided", "potential", "num_uncontent", "changed_nodes",
                                              "config_hash", "seed"}));
    EXPECT_EQ(rows[0]["changed_nodes"], nlohmann::ordered_json::parse("[3,4]"));
    EXPECT_EQ(rows[1]["round"], 6);
}

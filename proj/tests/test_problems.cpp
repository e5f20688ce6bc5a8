#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sslcl/errors.hpp"
#include "sslcl/experiment.hpp"
#include "sslcl/generators.hpp"
#include "sslcl/phase_runner.hpp"

using namespace sslcl;

namespace {

const MarkPayload* marked(const MarkPayload& p) { return &p; }

/// Host graph with a single edge.
Graph single_edge() { return make_path(2, 1); }

}  // namespace

TEST(MisPhase, DecideExamples) {
    const MisPhase mis;
    EXPECT_EQ(mis.decide({true}, Multiset(2, {kIn})), kOut);
    EXPECT_EQ(mis.decide({false}, Multiset(2, {kIn, kOut})), kOut);
    EXPECT_EQ(mis.decide({true}, Multiset(2, {kOut})), kIn);
    EXPECT_EQ(mis.decide({false}, Multiset(2)), kBottom);
}

TEST(MisPhase, WinnerNeedsStrictlyLargerDegree) {
    const MisPhase mis;
    const MarkRegs me{true, 2};
    const MarkPayload tie{true, 2};
    const MarkPayload smaller{true, 1};
    const MarkPayload unmarked{false, 5};
    EXPECT_FALSE(mis.summarize(me, {}, std::vector<const MarkPayload*>{marked(tie)}).winner);
    EXPECT_TRUE(mis.summarize(me, {}, std::vector<const MarkPayload*>{marked(smaller), marked(unmarked)}).winner);
    EXPECT_TRUE(mis.summarize(me, {}, std::vector<const MarkPayload*>{nullptr}).winner);
    EXPECT_FALSE(mis.summarize(MarkRegs{false, 2}, {}, std::vector<const MarkPayload*>{}).winner);
}

TEST(MisPhase, IsolatedNodeAlwaysMarks) {
    const MisPhase mis;
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        MarkRegs r;
        std::vector<MarkPayload> out;
        mis.work(1, r, PhaseView{0, 4}, {}, out, rng);
        EXPECT_TRUE(r.marked);
    }
}

TEST(ColoringPhase, DecideExamples) {
    const ColoringPhase col(4);
    EXPECT_EQ(col.decide({0, 0, false}, Multiset(4, {1, 2})), 3);
    EXPECT_EQ(col.decide({2, 3, true}, Multiset(4)), kBottom);
    EXPECT_EQ(col.decide({2, 3, false}, Multiset(4, {3})), kBottom);
    EXPECT_EQ(col.decide({2, 3, false}, Multiset(4, {1})), 3);
}

TEST(IncrementalPhase, DecideExamples) {
    const IncrementalPhase inc(3);
    EXPECT_EQ(inc.decide({false}, Multiset(3, {1, 2})), 3);
    EXPECT_EQ(inc.decide({true}, Multiset(3, {1})), 2);
    EXPECT_EQ(inc.decide({true}, Multiset(3)), 1);
    EXPECT_EQ(inc.decide({true}, Multiset(3, {2})), 1);
    EXPECT_EQ(inc.decide({false}, Multiset(3, {1})), kBottom);
    EXPECT_THROW(IncrementalPhase(1), ConfigError);
}

TEST(IncrementalPhase, TwoColorsBehaveLikeMis) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Graph g = make_random_bounded(25, 0.2, 5, seed);
        NodePhaseRunner<IncrementalPhase> inc(IncrementalPhase(2), g, seed);
        NodePhaseRunner<MisPhase> mis(MisPhase{}, g, seed);
        Configuration a = Configuration::nodes_bottom(g);
        Configuration b = a;
        for (int phase = 0; phase < 40; ++phase) {
            a = inc.run(g, a);
            b = mis.run(g, b);
            ASSERT_EQ(a, b) << "seed " << seed << " phase " << phase;
        }
    }
}

TEST(CloneProblems, MaxColoringWithTwoColorsIsMisRoundByRound) {
    const Problem mis = make_problem("mis", 4);
    const Problem max2 = make_problem("max-node-coloring", 4, {.c = 2});
    ASSERT_EQ(max2.alpha, 1);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = make_random_bounded(20, 0.25, 4, seed);
        auto a = mis.make_simulation(g, seed);
        auto b = max2.make_simulation(g, seed);
        for (int r = 0; r < 300; ++r) {
            a->run_round();
            b->run_round();
            ASSERT_EQ(a->configuration(), b->configuration()) << "seed " << seed << " round " << r;
        }
    }
}

TEST(CloneProblems, DeltaPlusOneIsMaxColoringWithDeltaPlusTwoColors) {
    const int delta = 3;
    const Problem d1 = make_problem("delta1-coloring", delta);
    const Problem mx = make_problem("max-node-coloring", delta, {.c = delta + 2});
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = make_random_bounded(15, 0.3, delta, seed);
        auto a = d1.make_simulation(g, seed);
        auto b = mx.make_simulation(g, seed);
        for (int r = 0; r < 200; ++r) {
            a->run_round();
            b->run_round();
            ASSERT_EQ(a->configuration(), b->configuration());
        }
    }
}

TEST(CloneProblems, AtMostOneCloneIsIn) {
    const int delta = 4;
    const Problem p = make_problem("delta1-coloring", delta);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = make_random_bounded(20, 0.25, delta, seed);
        auto sim = initial_legal_simulation(p, g, seed, 100000);
        const Configuration inner = sim->inner_configuration();
        const Configuration host = sim->configuration();
        for (NodeId v = 0; v < g.slot_count(); ++v) {
            int in = 0;
            for (int i = 0; i < p.alpha; ++i) in += inner.values[v * static_cast<NodeId>(p.alpha) + static_cast<NodeId>(i)] == kIn;
            EXPECT_LE(in, 1);
            EXPECT_GE(host.values[v], 1);
            EXPECT_LE(host.values[v], delta + 2);
        }
        EXPECT_TRUE(oracle::is_mis(sim->inner_graph(), inner.values));
    }
}

TEST(MatchingDetect, VerdictExamples) {
    const MatchingDetect d;
    const std::vector<Value> mat_unm = {kMat, kUnm};
    EXPECT_TRUE(d.verdict(mat_unm, 0, {kMat, false}));
    EXPECT_FALSE(d.verdict(mat_unm, 0, {kMat, true}));
    EXPECT_FALSE(d.verdict(mat_unm, 0, {kUnm, false}));
    EXPECT_TRUE(d.verdict(mat_unm, 1, {kUnm, false}));
    const std::vector<Value> unm_only = {kUnm};
    EXPECT_FALSE(d.verdict(unm_only, 0, {kUnm, false}));
    EXPECT_TRUE(d.verdict(unm_only, 0, {kUnm, true}));
    const std::vector<Value> bottom = {kBottom};
    EXPECT_TRUE(d.verdict(bottom, 0, {kBottom, true}));
    EXPECT_FALSE(d.verdict(bottom, 0, {kMat, false}));
    EXPECT_TRUE(d.message(mat_unm, 1).other_mat);
    EXPECT_FALSE(d.message(mat_unm, 0).other_mat);
}

TEST(MatchingPhase, MatchedEndpointTurnsNewEdgeUnmatched) {
    const MatchingPhase mm;
    const std::vector<Port> s_ports = {1};
    const MatchPayload accept{MatchPayload::Kind::accept, false};
    for (bool hint : {true, false}) {
        MatchRegs r;
        r.active = true;
        r.requested = 1;
        r.my_hint = hint;
        const std::vector<Value> out = {hint ? kMat : kUnm, kBottom};
        const EdgePhaseView view{s_ports, out, 2};
        std::vector<Value> result(1, kBottom);
        mm.decide(r, view, std::vector<const MatchPayload*>{&accept}, result);
        EXPECT_EQ(result[0], hint ? kUnm : kMat);
    }
}

TEST(MatchingPhase, IsolatedEdgeMatchesHalfTheTime) {
    const Graph g = single_edge();
    int matched = 0;
    const int n = 20000;
    for (int seed = 0; seed < n; ++seed) {
        EdgePhaseRunner<MatchingPhase> runner(MatchingPhase{}, g, static_cast<std::uint64_t>(seed));
        const Configuration c = runner.run(g, Configuration::edges_bottom(g));
        ASSERT_EQ(runner.disagreements(), 0u);
        matched += c.values[0] == kMat;
    }
    EXPECT_NEAR(static_cast<double>(matched) / n, 0.5, 0.02);
}

TEST(EdgeColoringPhase, CandidateColor) {
    const EdgeColoringPhase ec(10);
    EXPECT_EQ(ec.candidate_color(7, 5), 3);
    EXPECT_EQ(ec.candidate_color(5, 7), 3);
}

TEST(EdgeColoringPhase, IsolatedEdgeCommitsInTheFirstPhase) {
    const Graph g = single_edge();
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        EdgePhaseRunner<EdgeColoringPhase> runner(EdgeColoringPhase(5), g, seed);
        const Configuration c = runner.run(g, Configuration::edges_bottom(g));
        EXPECT_GE(c.values[0], 1);
        EXPECT_LE(c.values[0], 5);
    }
}

TEST(EdgeColoringPhase, EqualCandidatesAtASharedNodeBothDecline) {
    const EdgeColoringPhase ec(7);
    EdgeColorRegs r;
    r.proposal = {1, 2};
    r.candidate = {3, 3};
    r.accept = {1, 1};
    const std::vector<Port> s_ports = {0, 1};
    const std::vector<Value> out = {kBottom, kBottom};
    const EdgePhaseView view{s_ports, out, 2};
    std::vector<std::optional<EdgeColorPayload>> sent(2);
    Rng rng(1);
    ec.work(3, r, view, std::vector<const EdgeColorPayload*>{nullptr, nullptr}, sent, rng);
    EXPECT_EQ(r.accept[0], 0);
    EXPECT_EQ(r.accept[1], 0);
    ASSERT_TRUE(sent[0] && sent[1]);
    EXPECT_EQ(sent[0]->value, 0);
}

TEST(LineProblems, TwoDeltaMinusOneOnAStar) {
    const Problem p = make_problem("2delta1-edge-coloring", 3);
    const Graph g = make_star(3, 3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto sim = initial_legal_simulation(p, g, seed, 100000);
        EXPECT_TRUE(oracle::is_proper_edge_coloring(sim->configuration(), 5)) << "seed " << seed;
    }
}

TEST(LineProblems, MaxEdgeColoringWithTwoColorsIsAMaximalMatching) {
    const Problem p = make_problem("max-edge-coloring", 4, {.c = 2});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = make_random_bounded(15, 0.3, 4, seed);
        auto sim = initial_legal_simulation(p, g, seed, 100000);
        EXPECT_TRUE(oracle::is_maximal_matching(sim->graph(), sim->configuration(), 1, 2)) << "seed " << seed;
    }
}

TEST(LineProblems, IncrementalOnASingleEdgeGivesOne) {
    const Problem p = make_problem("inc-edge-coloring", 1, {.c = 2});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto sim = initial_legal_simulation(p, single_edge(), seed, 100000);
        EXPECT_EQ(sim->configuration().values, std::vector<Value>{1});
    }
}

TEST(DirectProblems, LegalOutputsPassIndependentChecks) {
    const Graph g = make_random_bounded(25, 0.25, 4, 31);
    const Problem col = make_problem("node-coloring", 4);
    const Problem ec = make_problem("edge-coloring", 4);
    const Problem mm = make_problem("mm", 4);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EXPECT_TRUE(oracle::is_proper_coloring(g, initial_legal_simulation(col, g, seed, 100000)->configuration().values, 5));
        EXPECT_TRUE(oracle::is_proper_edge_coloring(initial_legal_simulation(ec, g, seed, 100000)->configuration(), 10));
        EXPECT_TRUE(oracle::is_maximal_matching(g, initial_legal_simulation(mm, g, seed, 100000)->configuration(), kMat, kUnm));
    }
}

TEST(Registry, Errors) {
    EXPECT_THROW(make_problem("bogus", 3), UnknownProblem);
    EXPECT_THROW(make_problem("node-coloring", 3, {.palette = 3}), PaletteTooSmall);
    EXPECT_THROW(make_problem("edge-coloring", 3, {.palette = 6}), PaletteTooSmall);
    EXPECT_THROW(make_problem("max-node-coloring", 3, {.c = 1}), ConfigError);
    EXPECT_THROW(make_problem("inc-edge-coloring", 3, {.c = 7}), ConfigError);
    EXPECT_THROW(make_problem("mis", 0), ConfigError);
}

TEST(Registry, TimingParameters) {
    const Problem mis = make_problem("mis", 4);
    EXPECT_EQ(mis.host_phi, 3);
    EXPECT_EQ(mis.strong_offset, 1 + 3 + 2);
    EXPECT_EQ(mis.locality_radius, 5);
    EXPECT_EQ(mis.confirm_window, 8);
    const Problem mm = make_problem("mm", 4);
    EXPECT_EQ(mm.strong_offset, 1 + 4 + 3);
    EXPECT_EQ(mm.locality_radius, 6);
    const Problem line = make_problem("max-edge-coloring", 4, {.c = 3});
    EXPECT_EQ(line.host_phi, 6);
    EXPECT_EQ(line.strong_offset, 1 + 6 + 3);
    EXPECT_EQ(inner_degree_bound(line), 2 * 4 - 2 + 1);
    EXPECT_EQ(problem_names().size(), 10u);
}

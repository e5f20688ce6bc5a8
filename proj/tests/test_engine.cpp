#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sslcl/edge_transformer.hpp"
#include "sslcl/errors.hpp"
#include "sslcl/experiment.hpp"
#include "sslcl/generators.hpp"
#include "sslcl/node_transformer.hpp"
#include "sslcl/simulation_impl.hpp"

using namespace sslcl;

namespace {

using MisAlgo = NodeTransformer<MisPhase>;
using MmAlgo = EdgeTransformer<MatchingPhase, MatchingDetect>;

Network<MisAlgo>& mis_network(Simulation& sim) {
    return dynamic_cast<NetworkSimulation<MisAlgo>&>(sim).network();
}

}  // namespace

TEST(Engine, LegalMisIsKeptWithoutFaults) {
    const Problem p = make_problem("mis", 2);
    auto sim = initial_legal_simulation(p, make_cycle(12), 4, 100000);
    const Configuration legal = sim->configuration();
    ASSERT_TRUE(oracle::is_mis(sim->graph(), legal.values));
    for (int r = 0; r < 300; ++r) {
        sim->run_round();
        ASSERT_EQ(sim->configuration(), legal) << "round " << r;
    }
}

TEST(Engine, WaitClearsAtHbar) {
    const MisAlgo algo{MisPhase{}};
    auto s = algo.make_state({1, 0, 2});
    s.wait = true;
    s.step = kHbar;
    std::vector<MisAlgo::Message> in(2);
    std::vector<MisAlgo::Message> out(2);
    RoundContext ctx;
    ctx.degree = 2;
    ctx.delta = 2;
    algo.compute(s, ctx, in, out);
    EXPECT_FALSE(s.wait);
    EXPECT_TRUE(s.step == kHbar || s.step == 0);
}

TEST(Engine, WaitingNodeSkipsThePhase) {
    const MisAlgo algo{MisPhase{}};
    auto s = algo.make_state({1, 0, 2});
    s.wait = true;
    s.step = 0;
    std::vector<MisAlgo::Message> in(2);
    std::vector<MisAlgo::Message> out(2);
    RoundContext ctx;
    ctx.degree = 2;
    ctx.delta = 2;
    algo.compute(s, ctx, in, out);
    EXPECT_TRUE(s.wait);
    EXPECT_EQ(s.step, 1);
    for (const auto& m : out) EXPECT_EQ(m.phase.tag, PhaseField<MarkPayload>::Tag::nil);
}

TEST(Engine, StepAdvancesDeterministicallyInsideAPhase) {
    const MmAlgo algo{MatchingPhase{}, MatchingDetect{}};
    auto s = algo.make_state({1, 0, 2});
    s.step = 2;
    std::vector<MmAlgo::Message> in(2);
    std::vector<MmAlgo::Message> out(2);
    RoundContext ctx;
    ctx.degree = 2;
    ctx.delta = 2;
    algo.compute(s, ctx, in, out);
    EXPECT_EQ(s.step, 3);
    for (const auto& m : out) EXPECT_EQ(m.pps, 2);
    algo.compute(s, ctx, in, out);
    EXPECT_EQ(s.step, kHbar);
}

TEST(Engine, MisFromBottomOnC8IsLegal) {
    const Problem p = make_problem("mis", 2);
    const Graph g = make_cycle(8);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto sim = initial_legal_simulation(p, g, seed, 100000);
        EXPECT_TRUE(oracle::is_mis(sim->graph(), sim->configuration().values)) << "seed " << seed;
    }
}

TEST(Engine, ZeroFaultsGiveZeroRecoveryTime) {
    const Problem p = make_problem("mis", 2);
    TrialOptions o;
    o.k = 0;
    const TrialResult r = run_trial(p, make_cycle(64), 3, o);
    ASSERT_FALSE(r.timeout);
    EXPECT_EQ(r.T, 0);
    EXPECT_TRUE(r.manipulated.empty());
    EXPECT_EQ(r.locality_violations, 0);
}

TEST(Engine, ZeroBudgetTimesOut) {
    const Problem p = make_problem("mis", 2);
    auto sim = p.make_simulation(make_cycle(8), 1);
    EXPECT_THROW(run_until_stable(*sim, p, 0, p.confirm_window), Timeout);
    TrialOptions o;
    o.max_rounds = 0;
    EXPECT_TRUE(run_trial(p, make_cycle(8), 1, o).timeout);
}

TEST(Adversary, BatchedScheduleTouchesDistinctNodes) {
    const Graph g = make_cycle(20);
    const auto schedule = random_fault_schedule(g, 8, 4, {"corrupt"}, 5, 10, 1);
    ASSERT_EQ(schedule.size(), 8u);
    std::set<NodeId> nodes;
    std::set<long long> rounds;
    for (const auto& a : schedule) {
        nodes.insert(a.node);
        rounds.insert(a.round);
        EXPECT_GE(a.round, 10);
    }
    EXPECT_EQ(nodes.size(), 8u);
    EXPECT_EQ(rounds.size(), 4u);
}

TEST(Adversary, ScheduleErrors) {
    const Graph g = make_cycle(20);
    EXPECT_THROW(random_fault_schedule(g, 21, 1, {"corrupt"}, 1, 0), KTooLarge);
    EXPECT_THROW(random_fault_schedule(g, 0, 1, {"corrupt"}, 1, 0), ConfigError);
    EXPECT_THROW(random_fault_schedule(g, 2, 1, {"bogus"}, 1, 0), ConfigError);
    EXPECT_THROW(run_trial(make_problem("mis", 2), make_cycle(64), 1, TrialOptions{.k = 70}), KTooLarge);
}

TEST(Adversary, EdgeFaultsManipulateEveryChosenNodeOnce) {
    const Graph g = make_random_bounded(30, 0.2, 4, 8);
    const auto schedule = random_fault_schedule(g, 10, 2, {"edge"}, 3, 0, 1);
    std::multiset<NodeId> touched;
    for (const auto& a : schedule) {
        for (NodeId v : manipulated_nodes(a, g)) touched.insert(v);
    }
    EXPECT_EQ(touched.size(), 10u);
    EXPECT_EQ(std::set<NodeId>(touched.begin(), touched.end()).size(), 10u);
}

TEST(Engine, RemovingAMatchedNodeResetsDependentEdgesQuickly) {
    const Problem p = make_problem("mm", 4);
    const Graph g = make_random_bounded(30, 0.2, 4, 21);
    auto sim = initial_legal_simulation(p, g, 2, 100000);
    const Configuration c = sim->configuration();
    ASSERT_TRUE(oracle::is_maximal_matching(sim->graph(), c, kMat, kUnm));
    std::size_t k = 0;
    while (k < c.values.size() && c.values[k] != kMat) ++k;
    ASSERT_LT(k, c.values.size());
    AdversaryAction a;
    a.kind = AdversaryAction::Kind::remove_node;
    a.node = c.edges[k].a;
    sim->apply(a);
    for (int r = 0; r < 2; ++r) sim->run_round();
    const Configuration now = sim->configuration();
    std::size_t bad = 0;
    for (std::size_t x : uncontent(p.lcl, sim->graph(), now)) bad += now.values[x] != kBottom;
    EXPECT_EQ(bad, 0u);
    EXPECT_EQ(sim->port_inconsistent_edges(), 0u);
}

TEST(Engine, SameSeedSameRun) {
    const Problem p = make_problem("mm", 4);
    const Graph g = make_random_bounded(25, 0.25, 4, 4);
    TrialOptions o;
    o.k = 5;
    o.record_trace = true;
    const TrialResult a = run_trial(p, g, 77, o);
    const TrialResult b = run_trial(p, g, 77, o);
    EXPECT_EQ(a.T, b.T);
    EXPECT_EQ(a.manipulated, b.manipulated);
    ASSERT_EQ(a.trace.rounds.size(), b.trace.rounds.size());
    for (std::size_t i = 0; i < a.trace.rounds.size(); ++i) {
        EXPECT_EQ(a.trace.rounds[i].changed_nodes, b.trace.rounds[i].changed_nodes);
        EXPECT_EQ(a.trace.rounds[i].potential, b.trace.rounds[i].potential);
    }
}

TEST(Engine, ReseedReplacesCoinsButKeepsRegisters) {
    const Problem p = make_problem("mis", 4);
    const Graph g = make_random_bounded(30, 0.2, 4, 6);
    auto base = initial_legal_simulation(p, g, 1, 100000);
    auto a = base->copy();
    auto b = base->copy();
    a->reseed(9);
    b->reseed(9);
    EXPECT_EQ(a->configuration(), base->configuration());
    for (int r = 0; r < 20; ++r) {
        a->randomize_all();
        b->randomize_all();
        a->run_round();
        b->run_round();
        ASSERT_EQ(a->configuration(), b->configuration());
    }
    auto& na = mis_network(*a);
    auto& nb = mis_network(*b);
    for (NodeId v = 0; v < g.slot_count(); ++v) EXPECT_EQ(na.state(v).step, nb.state(v).step);

    TrialOptions o;
    o.k = 4;
    const TrialResult r1 = run_trial_from(p, *base, 5, o);
    const TrialResult r2 = run_trial_from(p, *base, 5, o);
    EXPECT_EQ(r1.T, r2.T);
    EXPECT_EQ(r1.manipulated, r2.manipulated);
    EXPECT_EQ(r1.initial_rounds, base->time());
}

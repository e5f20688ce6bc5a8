#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sslcl/experiment.hpp"
#include "sslcl/generators.hpp"
#include "sslcl/simulation_impl.hpp"

using namespace sslcl;

namespace {

using MisLine = LineSimulation<MisPhase>;

RoundContext context(int degree, int delta) {
    RoundContext ctx;
    ctx.degree = degree;
    ctx.delta = delta;
    return ctx;
}

}  // namespace

TEST(CloneSimulation, MatchesMisOnTheCloneGraph) {
    const int delta = 3;
    const Problem clones = make_problem("max-node-coloring", delta, {.c = 3});
    ASSERT_EQ(clones.alpha, 2);
    const Problem mis = make_problem("mis", delta + clones.alpha - 1);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = make_random_bounded(15, 0.3, delta, 50 + seed);
        const Graph cg = clone_graph(g, clones.alpha).graph;
        auto a = clones.make_simulation(g, seed);
        auto b = mis.make_simulation(cg, seed);
        for (int r = 0; r < 300; ++r) {
            a->run_round();
            b->run_round();
            ASSERT_EQ(a->inner_configuration().values, b->configuration().values) << "seed " << seed << " round " << r;
        }
    }
}

TEST(LineSimulation, ForcedPhasesMatchDirectExecutionOnTheLineGraph) {
    const Problem line = make_problem("max-edge-coloring", 2, {.c = 2});
    ASSERT_EQ(line.alpha, 1);
    const Problem mis = make_problem("mis", 2);
    for (std::size_t n = 3; n <= 8; ++n) {
        for (const bool cycle : {false, true}) {
            const Graph g = cycle ? make_cycle(n) : make_path(n);
            const Graph lg = line_graph(g).graph;
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                auto a = line.make_simulation(g, seed);
                auto b = mis.make_simulation(lg, seed);
                a->hooks().forced_start = true;
                b->hooks().forced_start = true;
                for (int phase = 0; phase < 30; ++phase) {
                    for (int r = 0; r <= line.host_phi; ++r) a->run_round();
                    for (int r = 0; r <= mis.host_phi; ++r) b->run_round();
                    ASSERT_EQ(a->inner_configuration().values, b->configuration().values)
                        << (cycle ? "cycle " : "path ") << n << " seed " << seed << " phase " << phase;
                }
            }
        }
    }
}

TEST(LineSimulation, RolesAreSymmetric) {
    const Problem line = make_problem("max-edge-coloring", 1, {.c = 2});
    const Graph g = make_path(2, 1);
    int lower_is_x = 0;
    int started = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        auto sim = line.make_simulation(g, seed);
        auto& net = dynamic_cast<NetworkSimulation<MisLine>&>(*sim).network();
        const MisLine& algo = net.algorithm();
        for (int r = 0; r < 400; ++r) {
            sim->run_round();
            const bool s0 = algo.started(net.state(0), 0, 0);
            const bool s1 = algo.started(net.state(1), 0, 0);
            if (s0 || s1) {
                ASSERT_TRUE(s0 && s1);
                const bool x0 = algo.is_x(net.state(0), 0, 0);
                const bool x1 = algo.is_x(net.state(1), 0, 0);
                ASSERT_NE(x0, x1);
                lower_is_x += x0;
                ++started;
                break;
            }
        }
    }
    ASSERT_GT(started, 9900);
    EXPECT_NEAR(static_cast<double>(lower_is_x) / started, 0.5, 0.02);
}

TEST(LineSimulation, StepMismatchDropsToHbar) {
    const MisLine algo(MisPhase{}, 1);
    auto s = algo.make_state({1, 0, 1});
    auto& e = s.el[0][0];
    e.step = 2;
    e.started = true;
    e.is_x = true;
    std::vector<MisLine::Message> in(1);
    in[0].el.resize(1);
    in[0].el[0].step = 3;
    in[0].el[0].coin_exit = e.sent.coin_exit;
    std::vector<MisLine::Message> out(1);
    RoundContext ctx = context(1, 1);
    algo.compute(s, ctx, in, out);
    EXPECT_EQ(algo.step(s, 0, 0), kHbar);
    EXPECT_FALSE(algo.started(s, 0, 0));
}

TEST(LineSimulation, RoleCoinsDecideTheStart) {
    const MisLine algo(MisPhase{}, 1);
    for (const bool same_role : {true, false}) {
        for (const bool my_role : {true, false}) {
            auto s = algo.make_state({1, 0, 1});
            auto& e = s.el[0][0];
            e.step = kHbar;
            e.sent.coin_exit = true;
            e.sent.coin_role = my_role;
            e.sent.ready = true;
            std::vector<MisLine::Message> in(1);
            in[0].el.resize(1);
            in[0].el[0].step = kHbar;
            in[0].el[0].coin_exit = false;
            in[0].el[0].coin_role = same_role ? my_role : !my_role;
            in[0].el[0].ready = true;
            std::vector<MisLine::Message> out(1);
            RoundContext ctx = context(1, 1);
            algo.compute(s, ctx, in, out);
            EXPECT_EQ(algo.step(s, 0, 0), 0);
            EXPECT_EQ(algo.started(s, 0, 0), !same_role);
            if (!same_role) EXPECT_EQ(algo.is_x(s, 0, 0), my_role);
        }
    }
}

TEST(LineSimulation, EqualExitCoinsStayAtHbar) {
    const MisLine algo(MisPhase{}, 1);
    auto s = algo.make_state({1, 0, 1});
    s.el[0][0].sent.coin_exit = true;
    std::vector<MisLine::Message> in(1);
    in[0].el.resize(1);
    in[0].el[0].coin_exit = true;
    std::vector<MisLine::Message> out(1);
    RoundContext ctx = context(1, 1);
    algo.compute(s, ctx, in, out);
    EXPECT_EQ(algo.step(s, 0, 0), kHbar);
}

TEST(LineSimulation, MisOnTheLineGraphOfAPathIsAMaximalMatching) {
    const Problem p = make_problem("max-edge-coloring", 2, {.c = 2});
    const Graph g = make_path(4);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto sim = initial_legal_simulation(p, g, seed, 100000);
        EXPECT_TRUE(oracle::is_maximal_matching(g, sim->configuration(), 1, 2)) << "seed " << seed;
    }
}

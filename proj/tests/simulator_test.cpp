#include <cmath>

#include <gtest/gtest.h>
#include <omp.h>

#include "test_graphs.hpp"
#include "walkmem/absorbing.hpp"
#include "walkmem/error.hpp"
#include "walkmem/simulator.hpp"

namespace walkmem {
namespace {

using testing::complete;
using testing::cycle;
using testing::path;
using testing::star;

StrategySpec spec(const char* text) { return StrategySpec::parse(text); }

double mean_passage(const Graph& g, const StrategySpec& s, NodeId a, NodeId z, int runs, std::uint64_t seed) {
    Rng rng(seed);
    const TransitionModel model(g, s);
    const WalkSampler sampler(model);
    double total = 0.0;
    for (int i = 0; i < runs; ++i) total += static_cast<double>(*sampler.first_passage(a, z, rng, 1'000'000));
    return total / runs;
}

TEST(Step, Examples) {
    Rng rng(1);
    const auto next = step(cycle(4), spec("f-rwm"), WalkState{0, 1, 3}, rng);
    EXPECT_EQ(next.previous, 1);
    EXPECT_EQ(next.current, 2);
    EXPECT_EQ(next.steps, 4);
    const auto back = step(path(2), spec("f-rwm"), WalkState{0, 1, 0}, rng);
    EXPECT_EQ(back.current, 0);
    EXPECT_EQ(back.previous, 1);
}

TEST(Step, DeterministicForFixedSeed) {
    const Graph g = testing::random_connected(20, 0.2, 3);
    for (const auto& s : default_strategies()) {
        Rng a(42), b(42);
        WalkState x{std::nullopt, 0, 0}, y{std::nullopt, 0, 0};
        for (int i = 0; i < 200; ++i) {
            x = step(g, s, x, a);
            y = step(g, s, y, b);
            ASSERT_EQ(x.current, y.current);
            ASSERT_TRUE(g.has_arc(*x.previous, x.current));
        }
    }
}

TEST(Step, DeadEnd) {
    Rng rng(0);
    EXPECT_THROW(step(testing::make(2, {{0, 1}}, true), spec("u-rw"), WalkState{std::nullopt, 1, 0}, rng),
                 DeadEndError);
}

TEST(FirstPassage, Examples) {
    Rng rng(5);
    for (const auto& s : default_strategies()) EXPECT_EQ(first_passage_time(path(2), s, 0, 1, rng, 10), 1);
    EXPECT_NEAR(mean_passage(cycle(6), spec("f-rwm"), 0, 1, 100'000, 7), 3.0, 0.02);
    EXPECT_NEAR(mean_passage(cycle(5), spec("u-rw"), 0, 1, 100'000, 8), 4.0, 0.05);
}

TEST(FirstPassage, CensoredWhenStepCapIsHit) {
    Rng rng(5);
    EXPECT_EQ(first_passage_time(cycle(20), spec("f-rwm"), 0, 10, rng, 5), std::nullopt);
    EXPECT_EQ(first_passage_time(cycle(20), spec("f-rwm"), 0, 10, rng, 10), 10);
}

TEST(FirstPassage, CachedAndLazySamplersAgree) {
    const Graph g = testing::random_connected(15, 0.3, 21);
    for (const auto& s : default_strategies()) {
        const TransitionModel model(g, s);
        const WalkSampler cached(model, 1'000'000), lazy(model, 0);
        EXPECT_TRUE(cached.cached());
        EXPECT_FALSE(lazy.cached());
        Rng a(9), b(9);
        for (int i = 0; i < 200; ++i)
            ASSERT_EQ(cached.first_passage(0, 7, a, 100'000), lazy.first_passage(0, 7, b, 100'000)) << s.label();
    }
}

TEST(Estimate, CompleteGraphOracle) {
    // 8 * 7 pairs * 1786 repetitions ~ 1e5 trajectories
    SimConfig config;
    config.repetitions = 1786;
    config.seed = 3;
    const auto r = estimate_grmfpt(complete(8), spec("u-rw"), config, "K8");
    EXPECT_NEAR(r.grmfpt, 7.0, 0.07);
    EXPECT_EQ(r.method, Method::Simulated);
    EXPECT_EQ(r.trajectories, 56 * 1786);
    EXPECT_EQ(r.pairs, 56);
    EXPECT_EQ(r.censored, 0);
    EXPECT_GT(r.standard_error, 0.0);
    EXPECT_EQ(r.network, "K8");
}

TEST(Estimate, BitIdenticalAcrossRunsAndThreadCounts) {
    const Graph g = testing::random_connected(25, 0.2, 4);
    for (auto mode : {SimConfig::Mode::AllPairs, SimConfig::Mode::SampledPairs}) {
        SimConfig config;
        config.mode = mode;
        config.repetitions = 2;
        config.sampled_pairs = 3000;
        config.seed = 99;
        omp_set_num_threads(1);
        const auto one = estimate_grmfpt(g, spec("pid-rwm"), config);
        omp_set_num_threads(3);
        const auto three = estimate_grmfpt(g, spec("pid-rwm"), config);
        const auto again = estimate_grmfpt(g, spec("pid-rwm"), config);
        EXPECT_EQ(one.grmfpt, three.grmfpt);
        EXPECT_EQ(one.standard_error, three.standard_error);
        EXPECT_EQ(three.grmfpt, again.grmfpt);
        for (NodeId z = 0; z < g.node_count(); ++z)
            if (!std::isnan(one.target_gmfpt(z))) EXPECT_EQ(one.target_gmfpt(z), three.target_gmfpt(z));
        config.seed = 100;
        EXPECT_NE(estimate_grmfpt(g, spec("pid-rwm"), config).grmfpt, one.grmfpt);
    }
    omp_set_num_threads(omp_get_num_procs());
}

TEST(Estimate, SampledStandardErrorScalesWithBudget) {
    const Graph g = testing::random_connected(30, 0.15, 8);
    SimConfig config;
    config.mode = SimConfig::Mode::SampledPairs;
    config.repetitions = 1;
    config.seed = 17;
    config.sampled_pairs = 5'000;
    const auto small = estimate_grmfpt(g, spec("u-rw"), config);
    config.sampled_pairs = 50'000;
    const auto large = estimate_grmfpt(g, spec("u-rw"), config);
    EXPECT_EQ(small.trajectories, 5'000);
    EXPECT_EQ(large.pairs, 50'000);
    EXPECT_EQ(large.pair_mfpt.size(), 0);
    EXPECT_NEAR(small.standard_error / large.standard_error, std::sqrt(10.0), 0.2 * std::sqrt(10.0));
    const double exact = exact_report(g, spec("u-rw")).grmfpt;
    EXPECT_NEAR(large.grmfpt, exact, 4.0 * large.standard_error);
}

TEST(Estimate, TooManyCensoredIsAnError) {
    SimConfig config;
    config.max_steps = 3;
    config.repetitions = 2;
    EXPECT_THROW(estimate_grmfpt(cycle(12), spec("u-rw"), config), CensoredTrajectories);
    config.censored_limit = 1.0;
    const auto r = estimate_grmfpt(cycle(12), spec("u-rw"), config);
    EXPECT_GT(r.censored, 0);
    EXPECT_LT(r.censored, r.trajectories);
}

TEST(Estimate, ConfigValidation) {
    SimConfig config;
    config.repetitions = 0;
    EXPECT_THROW(config.validate(), InvalidArgument);
    config = {};
    config.mode = SimConfig::Mode::SampledPairs;
    config.sampled_pairs = 0;
    EXPECT_THROW(config.validate(), InvalidArgument);
    config = {};
    config.max_steps = -1;
    EXPECT_THROW(config.validate(), InvalidArgument);
    EXPECT_EQ(default_max_steps(cycle(10)), 1000 * 10 * 2);
    EXPECT_THROW(estimate_grmfpt(testing::make(4, {{0, 1}, {2, 3}}), spec("u-rw"), {}), DisconnectedGraph);
}

TEST(Occupation, Examples) {
    Rng rng(11);
    for (const auto& s : default_strategies()) {
        const auto kn = empirical_occupation(complete(6), s, 1000, 1'000'000, rng);
        EXPECT_LT((kn.array() - 1.0 / 6).abs().maxCoeff(), 0.005) << s.label();
    }
    const auto s3 = empirical_occupation(star(3), spec("u-rw"), 1001, 200'000, rng);
    EXPECT_NEAR(s3(0), 0.5, 0.01);
    const auto c4 = empirical_occupation(cycle(4), spec("u-rw"), 1000, 200'000, rng);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(c4(i), 0.25, 0.01);
    EXPECT_NEAR(c4.sum(), 1.0, 1e-12);
}

// Monte Carlo against the exact solver for every strategy on every small graph.
TEST(Oracle, MonteCarloMatchesExactOnSmallGraphs) {
    for (const Graph& g : testing::small_graph_zoo()) {
        const NodeId n = g.node_count();
        SimConfig config;
        config.repetitions = static_cast<int>(std::ceil(1e6 / (n * (n - 1.0))));
        config.seed = 2024;
        for (const auto& s : default_strategies()) {
            const double exact = exact_report(g, s).grmfpt;
            const double sim = estimate_grmfpt(g, s, config).grmfpt;
            EXPECT_LE(std::abs(sim - exact) / exact, 0.005) << s.label() << " N=" << n << " exact=" << exact
                                                            << " sim=" << sim;
        }
    }
}

}  // namespace
}  // namespace walkmem

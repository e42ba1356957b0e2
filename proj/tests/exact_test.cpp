#include <cmath>
#include <map>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "test_graphs.hpp"
#include "walkmem/absorbing.hpp"
#include "walkmem/error.hpp"
#include "walkmem/stationary.hpp"

namespace walkmem {
namespace {

using testing::complete;
using testing::cycle;
using testing::make;
using testing::path;
using testing::star;

// Brute-force MFPT matrix: dense transition matrix over (previous, current)
// pairs assembled straight from the kernels, one dense LU solve per target.
Eigen::MatrixXd dense_mfpt(const Graph& g, const StrategySpec& spec) {
    const TransitionModel model(g, spec);
    const NodeId n = g.node_count();
    std::map<std::pair<NodeId, NodeId>, int> index;
    std::vector<std::pair<NodeId, NodeId>> states;
    for (NodeId r = 0; r < n; ++r)
        for (NodeId s = 0; s < n; ++s)
            if (g.has_arc(r, s)) {
                index[{r, s}] = static_cast<int>(states.size());
                states.push_back({r, s});
            }
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, std::nan(""));
    for (NodeId z = 0; z < n; ++z) {
        const auto count = static_cast<Eigen::Index>(states.size());
        Eigen::MatrixXd system = Eigen::MatrixXd::Identity(count, count);
        Eigen::VectorXd rhs = Eigen::VectorXd::Ones(count);
        for (Eigen::Index i = 0; i < count; ++i) {
            const auto [r, s] = states[i];
            if (s == z || r == z) {  // absorbed, or never visited before absorption
                rhs(i) = 0.0;
                continue;
            }
            for (const auto& [t, p] : model.distribution(r, s)) system(i, index.at({s, t})) -= p;
        }
        const Eigen::VectorXd mu = system.fullPivLu().solve(rhs);
        for (NodeId a = 0; a < n; ++a) {
            if (a == z) continue;
            double total = 1.0;
            for (const auto& [b, p] : model.distribution(std::nullopt, a)) total += p * mu(index.at({a, b}));
            m(a, z) = total;
        }
    }
    return m;
}

double max_rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (i != j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / std::abs(b(i, j)));
    return worst;
}

StrategySpec spec(const char* text) { return StrategySpec::parse(text); }

TEST(ArcChain, ForwardOnCyclesAndPaths) {
    for (const Graph& g : {cycle(4), complete(3)}) {
        const auto chain = build_arc_chain(g, spec("f-rwm"));
        EXPECT_EQ(chain.state_count(), g.arc_count());
        for (Eigen::Index i = 0; i < chain.state_count(); ++i) {
            ASSERT_EQ(chain.transitions.row(i).nonZeros(), 1);
            TransitionMatrix::InnerIterator it(chain.transitions, i);
            EXPECT_EQ(it.value(), 1.0);
            // next state leaves from the current head, and not backwards
            EXPECT_EQ(g.arc_tail(static_cast<ArcId>(it.col())), g.arc_head(static_cast<ArcId>(i)));
            EXPECT_NE(g.arc_head(static_cast<ArcId>(it.col())), g.arc_tail(static_cast<ArcId>(i)));
        }
    }
    const Graph p = path(3);
    const auto chain = build_arc_chain(p, spec("f-rwm"));
    EXPECT_EQ(chain.transitions.coeff(*p.arc_id(0, 1), *p.arc_id(1, 2)), 1.0);
    EXPECT_EQ(chain.transitions.coeff(*p.arc_id(1, 2), *p.arc_id(2, 1)), 1.0);
}

TEST(ArcChain, RejectsMemorylessAndDeadEnds) {
    EXPECT_THROW(build_arc_chain(cycle(4), spec("u-rw")), InvalidArgument);
    EXPECT_THROW(build_node_chain(cycle(4), spec("id-rwm")), InvalidArgument);
    try {
        build_arc_chain(make(3, {{0, 1}, {1, 2}}, true), spec("f-rwm"));
        FAIL();
    } catch (const DeadEndError& e) {
        EXPECT_NE(std::string(e.what()).find("(1, 2)"), std::string::npos) << e.what();
    }
}

TEST(NodeChain, Examples) {
    const auto k3 = build_node_chain(complete(3), spec("u-rw"));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(k3.transitions.coeff(i, j), i == j ? 0.0 : 0.5);
    const auto p4 = build_node_chain(path(4), spec("id-rw"));
    EXPECT_NEAR(p4.transitions.coeff(1, 0), 2.0 / 3, 1e-15);
    EXPECT_NEAR(p4.transitions.coeff(1, 2), 1.0 / 3, 1e-15);
    const Graph c = cycle(6);
    EXPECT_TRUE(build_node_chain(c, spec("id-rw")).transitions.isApprox(build_node_chain(c, spec("u-rw")).transitions));
}

TEST(Chains, RowStochastic) {
    for (const Graph& g : testing::small_graph_zoo()) {
        for (const auto& s : default_strategies()) {
            const double err = s.has_memory() ? stochasticity_error(build_arc_chain(g, s).transitions)
                                              : stochasticity_error(build_node_chain(g, s).transitions);
            EXPECT_LE(err, 1e-12) << s.label();
        }
    }
}

TEST(Absorption, ForcedNextStep) {
    const Graph g = complete(3);
    const auto mu = mean_time_to_absorption(g, build_arc_chain(g, spec("f-rwm")), 2);
    EXPECT_DOUBLE_EQ(mu(*g.arc_id(0, 1)), 1.0);
    EXPECT_DOUBLE_EQ(mu(*g.arc_id(1, 0)), 1.0);
    EXPECT_EQ(mu(*g.arc_id(0, 2)), 0.0);
    EXPECT_TRUE(std::isnan(mu(*g.arc_id(2, 0))));
}

TEST(Absorption, ZeroTransientBlockGivesOnes) {
    // two transient states that always jump to the absorbing state 2
    std::vector<Eigen::Triplet<double>> t{{0, 2, 1.0}, {1, 2, 1.0}, {2, 2, 1.0}};
    TransitionMatrix p(3, 3);
    p.setFromTriplets(t.begin(), t.end());
    const StateRole roles[] = {StateRole::Transient, StateRole::Transient, StateRole::Absorbing};
    for (auto solver : {LinearSolver::Automatic, LinearSolver::Direct, LinearSolver::Iterative}) {
        const auto mu = absorption_times(p, roles, solver);
        EXPECT_DOUBLE_EQ(mu(0), 1.0);
        EXPECT_DOUBLE_EQ(mu(1), 1.0);
    }
}

TEST(Absorption, CycleNodeChainOracle) {
    const Graph g = cycle(5);
    for (NodeId z = 0; z < 5; ++z) {
        const auto mu = mean_time_to_absorption(g, build_node_chain(g, spec("u-rw")), z);
        for (NodeId a = 0; a < 5; ++a) {
            const int d = std::min((a - z + 5) % 5, (z - a + 5) % 5);
            EXPECT_NEAR(mu(a), d * (5 - d), 1e-10);
        }
    }
}

TEST(Absorption, UnreachableTarget) {
    // states 0 and 1 swap forever; state 2 absorbs but nobody goes there
    std::vector<Eigen::Triplet<double>> t{{0, 1, 1.0}, {1, 0, 1.0}, {2, 2, 1.0}};
    TransitionMatrix p(3, 3);
    p.setFromTriplets(t.begin(), t.end());
    const StateRole roles[] = {StateRole::Transient, StateRole::Transient, StateRole::Absorbing};
    EXPECT_THROW(absorption_times(p, roles), UnreachableTarget);
}

TEST(Absorption, SolverRoutesAgree) {
    const Graph g = testing::random_connected(30, 0.2, 7);
    const auto chain = build_arc_chain(g, spec("p-rwm"));
    const auto direct = mean_time_to_absorption(g, chain, 3, LinearSolver::Direct);
    const auto iter = mean_time_to_absorption(g, chain, 3, LinearSolver::Iterative);
    for (Eigen::Index i = 0; i < direct.size(); ++i)
        if (!std::isnan(direct(i))) EXPECT_NEAR(iter(i), direct(i), 1e-8 * direct.maxCoeff());
}

TEST(Mfpt, HandExamples) {
    const Graph k3 = complete(3);
    const auto m = mfpt(k3, build_arc_chain(k3, spec("f-rwm")), 2);
    EXPECT_NEAR(m(0), 1.5, 1e-12);
    EXPECT_TRUE(std::isnan(m(2)));
    for (NodeId n : {4, 5, 6, 9}) {
        const Graph c = cycle(n);
        const auto r = exact_report(c, spec("f-rwm"));
        for (NodeId a = 0; a < n; ++a)
            for (NodeId z = 0; z < n; ++z)
                if (a != z) EXPECT_NEAR(r.pair_mfpt(a, z), n / 2.0, 1e-10);
    }
    for (NodeId n : {3, 5, 8}) {
        const auto r = exact_report(complete(n), spec("u-rw"));
        for (NodeId a = 0; a < n; ++a)
            for (NodeId z = 0; z < n; ++z)
                if (a != z) EXPECT_NEAR(r.pair_mfpt(a, z), n - 1.0, 1e-10);
        EXPECT_NEAR(r.grmfpt, n - 1.0, 1e-10);
    }
}

TEST(Mfpt, GmfptAndGrmfptExamples) {
    const auto c5 = exact_report(cycle(5), spec("u-rw"));
    for (NodeId z = 0; z < 5; ++z) EXPECT_NEAR(c5.target_gmfpt(z), 5.0, 1e-10);
    const auto c6 = exact_report(cycle(6), spec("f-rwm"));
    for (NodeId z = 0; z < 6; ++z) EXPECT_NEAR(c6.target_gmfpt(z), 3.0, 1e-10);
    EXPECT_NEAR(c6.grmfpt, 3.0, 1e-10);
    EXPECT_EQ(c6.method, Method::Exact);
    EXPECT_EQ(c6.strategy, "f-rwm");
}

TEST(Mfpt, MatchesDenseBruteForce) {
    std::vector<StrategySpec> specs = default_strategies();
    specs.push_back(spec("p-rwm(alpha=0.3,beta=2)"));
    specs.push_back(spec("id-rw(degree=in)"));
    for (const Graph& g : testing::small_graph_zoo()) {
        for (const auto& s : specs) {
            const auto report = exact_report(g, s);
            EXPECT_LE(max_rel_diff(report.pair_mfpt, dense_mfpt(g, s)), 1e-8) << s.label();
        }
    }
}

TEST(Mfpt, ReportInvariants) {
    for (const Graph& g : testing::small_graph_zoo()) {
        for (const auto& s : default_strategies()) {
            const auto r = exact_report(g, s);
            for (NodeId z = 0; z < g.node_count(); ++z) {
                EXPECT_EQ(gmfpt(r.pair_mfpt, z), r.target_gmfpt(z));
                for (NodeId a = 0; a < g.node_count(); ++a)
                    if (a != z) EXPECT_GE(r.pair_mfpt(a, z), 1.0 - 1e-12);
            }
            EXPECT_EQ(r.grmfpt, r.target_gmfpt.mean());
        }
    }
}

TEST(Mfpt, LiftedMemorylessKernelReproducesNodeChain) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = testing::random_connected(15, 0.25, 300 + seed);
        for (const char* text : {"u-rw", "id-rw"}) {
            const auto node = build_node_chain(g, spec(text));
            const auto lifted = lift_to_arcs(g, node);
            for (NodeId z = 0; z < g.node_count(); z += 3) {
                const auto a = mfpt(g, node, z);
                const auto b = mfpt(g, lifted, z, InitialStep::Strategy);
                for (NodeId v = 0; v < g.node_count(); ++v)
                    if (v != z) EXPECT_NEAR(b(v), a(v), 1e-8 * a(v));
            }
        }
    }
}

TEST(Mfpt, UniformFirstStepOnLiftedUrwIsNodeChain) {
    const Graph g = testing::random_connected(12, 0.3, 9);
    const auto node = build_node_chain(g, spec("u-rw"));
    const auto lifted = lift_to_arcs(g, node);
    for (NodeId z = 0; z < g.node_count(); ++z) {
        const auto a = mfpt(g, node, z);
        const auto b = mfpt(g, lifted, z);
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (v != z) EXPECT_NEAR(b(v), a(v), 1e-8 * a(v));
    }
}

TEST(Mfpt, RegularGraphEquivalences) {
    const Graph g = cycle(7);
    EXPECT_NEAR(exact_report(g, spec("u-rw")).grmfpt, exact_report(g, spec("id-rw")).grmfpt, 1e-9);
    EXPECT_NEAR(exact_report(g, spec("f-rwm")).grmfpt, exact_report(g, spec("id-rwm")).grmfpt, 1e-9);
}

TEST(Mfpt, SizeGuardAndConnectivity) {
    ExactOptions options;
    options.arc_budget = 10;
    EXPECT_THROW(exact_report(complete(5), spec("f-rwm"), options), SizeLimitExceeded);
    EXPECT_NO_THROW(exact_report(complete(5), spec("u-rw"), options));
    EXPECT_THROW(exact_report(make(4, {{0, 1}, {2, 3}}), spec("u-rw")), DisconnectedGraph);
    options.arc_budget = 50'000;
    options.keep_pairs = false;
    const auto r = exact_report(complete(5), spec("f-rwm"), options);
    EXPECT_EQ(r.pair_mfpt.size(), 0);
    EXPECT_NEAR(r.grmfpt, exact_report(complete(5), spec("f-rwm")).grmfpt, 1e-12);
}

TEST(Stationary, Examples) {
    const auto kn = stationary_occupation(build_node_chain(complete(6), spec("u-rw")));
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(kn(i), 1.0 / 6, 1e-12);
    const auto s3 = stationary_occupation(build_node_chain(star(3), spec("u-rw")));
    EXPECT_NEAR(s3(0), 0.5, 1e-12);
    for (int i = 1; i <= 3; ++i) EXPECT_NEAR(s3(i), 1.0 / 6, 1e-12);
}

TEST(Stationary, UrwIsDegreeOverTwiceLinks) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = testing::random_connected(40, 0.1, 500 + seed);
        const auto pi = stationary_occupation(build_node_chain(g, spec("u-rw")));
        EXPECT_NEAR(pi.sum(), 1.0, 1e-10);
        for (NodeId v = 0; v < g.node_count(); ++v)
            EXPECT_NEAR(pi(v), g.out_degree(v) / (2.0 * g.link_count()), 1e-10);
    }
}

TEST(Stationary, ArcChainsAggregateToNodes) {
    const Graph g = testing::lollipop();
    // lifted U-RW arc chain has the same node occupation as the node chain
    const auto node = build_node_chain(g, spec("u-rw"));
    const auto via_arcs = stationary_occupation(g, lift_to_arcs(g, node));
    EXPECT_TRUE(via_arcs.isApprox(stationary_occupation(node), 1e-10));
    for (const auto& s : default_strategies()) {
        if (!s.has_memory()) continue;
        const auto pi = stationary_occupation(g, build_arc_chain(g, s));
        EXPECT_NEAR(pi.sum(), 1.0, 1e-10);
        EXPECT_GE(pi.minCoeff(), 0.0);
    }
}

TEST(Stationary, ReducibleChainIsAnError) {
    // F-RWM on a cycle keeps its orientation forever
    EXPECT_THROW(stationary_occupation(cycle(5), build_arc_chain(cycle(5), spec("f-rwm"))), ReducibleChain);
}

TEST(Kl, Examples) {
    EXPECT_NEAR(kl_from_uniform(Eigen::VectorXd::Constant(7, 1.0 / 7)), 0.0, 1e-15);
    Eigen::Vector4d star_occ(0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6);
    EXPECT_NEAR(kl_from_uniform(star_occ), 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(kl_from_uniform(star_occ), 0.1438, 5e-5);
    for (const auto& s : default_strategies()) {
        const Graph g = complete(5);
        const auto pi = s.has_memory() ? stationary_occupation(g, build_arc_chain(g, s))
                                       : stationary_occupation(build_node_chain(g, s));
        EXPECT_NEAR(kl_from_uniform(pi), 0.0, 1e-12) << s.label();
    }
    EXPECT_THROW(kl_from_uniform(Eigen::Vector2d(1.0, 0.0)), ReducibleChain);
}

}  // namespace
}  // namespace walkmem

#include "walkmem/absorbing.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <type_traits>
#include <vector>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include "walkmem/error.hpp"

namespace walkmem {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kResidualTolerance = 1e-10;
constexpr double kDirectRowFill = 6.0;

// Marks every transient state from which some absorbing state is reachable.
std::vector<char> reaches_absorption(const TransitionMatrix& p, std::span<const StateRole> roles) {
    const auto n = static_cast<std::size_t>(p.rows());
    std::vector<int> in_offsets(n + 1, 0);
    for (Eigen::Index r = 0; r < p.outerSize(); ++r) {
        for (TransitionMatrix::InnerIterator it(p, r); it; ++it) ++in_offsets[it.col() + 1];
    }
    for (std::size_t i = 0; i < n; ++i) in_offsets[i + 1] += in_offsets[i];
    std::vector<int> sources(static_cast<std::size_t>(in_offsets[n]));
    std::vector<int> fill(in_offsets.begin(), in_offsets.end() - 1);
    for (Eigen::Index r = 0; r < p.outerSize(); ++r) {
        for (TransitionMatrix::InnerIterator it(p, r); it; ++it) {
            sources[fill[it.col()]++] = static_cast<int>(r);
        }
    }
    std::vector<char> seen(n, 0);
    std::vector<int> queue;
    for (std::size_t i = 0; i < n; ++i) {
        if (roles[i] == StateRole::Absorbing) {
            seen[i] = 1;
            queue.push_back(static_cast<int>(i));
        }
    }
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const int v = queue[q];
        for (int k = in_offsets[v]; k < in_offsets[v + 1]; ++k) {
            const int u = sources[k];
            if (!seen[u] && roles[u] == StateRole::Transient) {
                seen[u] = 1;
                queue.push_back(u);
            }
        }
    }
    return seen;
}

using SystemMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

bool certified(const SystemMatrix& system, const Eigen::VectorXd& rhs, const Eigen::VectorXd& x) {
    const double scale = x.lpNorm<Eigen::Infinity>();
    return std::isfinite(scale) && (rhs - system * x).lpNorm<Eigen::Infinity>() <= kResidualTolerance * scale;
}

// Unpreconditioned BiCGSTAB. I - Q is an M-matrix with unit diagonal and
// converges in a few dozen iterations on well-mixing chains.
bool solve_iteratively(const SystemMatrix& system, const Eigen::VectorXd& rhs, Eigen::VectorXd& x) {
    Eigen::BiCGSTAB<SystemMatrix, Eigen::IdentityPreconditioner> solver;
    solver.setTolerance(1e-13);
    solver.setMaxIterations(150);
    solver.compute(system);
    x = solver.solve(rhs);
    return solver.info() == Eigen::Success && certified(system, rhs, x);
}

void solve_directly(const SystemMatrix& system, const Eigen::VectorXd& rhs, Eigen::VectorXd& x) {
    const Eigen::SparseMatrix<double, Eigen::ColMajor, int> columns = system;
    Eigen::SparseLU<Eigen::SparseMatrix<double, Eigen::ColMajor, int>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(columns);
    if (lu.info() != Eigen::Success) throw UnreachableTarget("absorbing system is singular: " + lu.lastErrorMessage());
    x = lu.solve(rhs);
    for (int refinement = 0; refinement < 3 && !certified(system, rhs, x); ++refinement) {
        x += lu.solve(rhs - system * x);
    }
    if (!certified(system, rhs, x)) {
        throw UnreachableTarget("absorbing system is ill-conditioned (residual " +
                                std::to_string((rhs - system * x).lpNorm<Eigen::Infinity>()) + ")");
    }
}

}  // namespace

Eigen::VectorXd absorption_times(const TransitionMatrix& p, std::span<const StateRole> roles,
                                 LinearSolver solver, LinearSolver* used) {
    const Eigen::Index n = p.rows();
    if (static_cast<Eigen::Index>(roles.size()) != n) throw InvalidArgument("state role count mismatch");

    std::vector<int> index(static_cast<std::size_t>(n), -1);
    int transient = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (roles[i] == StateRole::Transient) index[i] = transient++;
    }

    const auto reached = reaches_absorption(p, roles);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (roles[i] == StateRole::Transient && !reached[i]) {
            throw UnreachableTarget("state " + std::to_string(i) +
                                    " never reaches the target under this strategy");
        }
    }

    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = roles[i] == StateRole::Absorbing ? 0.0 : kNaN;
    if (transient == 0) {
        if (used) *used = solver == LinearSolver::Automatic ? LinearSolver::Direct : solver;
        return out;
    }

    // I - Q over transient states
    std::vector<Eigen::Triplet<double, int>> entries;
    entries.reserve(static_cast<std::size_t>(p.nonZeros()) + static_cast<std::size_t>(transient));
    for (Eigen::Index r = 0; r < n; ++r) {
        const int row = index[r];
        if (row < 0) continue;
        entries.emplace_back(row, row, 1.0);
        for (TransitionMatrix::InnerIterator it(p, r); it; ++it) {
            const auto role = roles[it.col()];
            if (role == StateRole::Omitted) {
                throw InvalidArgument("transient state " + std::to_string(r) + " moves into an omitted state");
            }
            if (role == StateRole::Transient) entries.emplace_back(row, index[it.col()], -it.value());
        }
    }
    SystemMatrix system(transient, transient);
    system.setFromTriplets(entries.begin(), entries.end());
    system.makeCompressed();

    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(transient);
    Eigen::VectorXd mu;
    if (solver == LinearSolver::Automatic) {
        // Sparse LU stays cheap while rows are short; denser chains fill in
        // badly and go through BiCGSTAB first.
        const double row_fill = static_cast<double>(system.nonZeros()) / static_cast<double>(transient);
        solver = row_fill <= kDirectRowFill ? LinearSolver::Direct : LinearSolver::Iterative;
    }
    if (solver == LinearSolver::Iterative && !solve_iteratively(system, ones, mu)) solver = LinearSolver::Direct;
    if (solver == LinearSolver::Direct) solve_directly(system, ones, mu);
    if (used) *used = solver;

    for (Eigen::Index i = 0; i < n; ++i) {
        if (index[i] >= 0) out[i] = mu[index[i]];
    }
    return out;
}

Eigen::VectorXd mean_time_to_absorption(const Graph& g, const ArcChain& chain, NodeId z, LinearSolver solver,
                                        LinearSolver* used) {
    std::vector<StateRole> roles(static_cast<std::size_t>(g.arc_count()), StateRole::Transient);
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        if (g.arc_head(a) == z) roles[a] = StateRole::Absorbing;
        else if (g.arc_tail(a) == z) roles[a] = StateRole::Omitted;
    }
    return absorption_times(chain.transitions, roles, solver, used);
}

Eigen::VectorXd mean_time_to_absorption(const Graph& g, const NodeChain& chain, NodeId z, LinearSolver solver,
                                        LinearSolver* used) {
    std::vector<StateRole> roles(static_cast<std::size_t>(g.node_count()), StateRole::Transient);
    roles[z] = StateRole::Absorbing;
    return absorption_times(chain.transitions, roles, solver, used);
}

Eigen::VectorXd mfpt(const Graph& g, const ArcChain& chain, NodeId z, InitialStep initial, LinearSolver solver,
                     LinearSolver* used) {
    const Eigen::VectorXd mu = mean_time_to_absorption(g, chain, z, solver, used);
    Eigen::VectorXd m(g.node_count());
    std::optional<TransitionModel> model;
    if (initial == InitialStep::Strategy) model.emplace(g, chain.strategy);
    TransitionDistribution first;
    for (NodeId a = 0; a < g.node_count(); ++a) {
        if (a == z) {
            m[a] = kNaN;
            continue;
        }
        if (initial == InitialStep::Uniform) first = uniform_kernel(g, a);
        else model->distribution(std::nullopt, a, first);
        double expected = 1.0;
        for (const auto& t : first) expected += t.probability * mu[*g.arc_id(a, t.node)];
        m[a] = expected;
    }
    return m;
}

Eigen::VectorXd mfpt(const Graph& g, const NodeChain& chain, NodeId z, LinearSolver solver, LinearSolver* used) {
    Eigen::VectorXd m = mean_time_to_absorption(g, chain, z, solver, used);
    m[z] = kNaN;
    return m;
}

MfptReport exact_report(const Graph& g, const StrategySpec& strategy, const ExactOptions& options) {
    const NodeId n = g.node_count();
    if (n < 2) throw InvalidArgument("MFPT needs at least 2 nodes");
    if (!is_connected(g)) {
        throw DisconnectedGraph(std::string("exact MFPT requires a ") + (g.directed() ? "strongly " : "") +
                                "connected graph");
    }
    if (strategy.has_memory() && g.arc_count() > options.arc_budget) {
        throw SizeLimitExceeded(std::to_string(g.arc_count()) + " arc states exceed the exact-solver budget of " +
                                std::to_string(options.arc_budget) + "; use the simulator");
    }

    MfptReport report;
    report.network = options.network_name;
    report.strategy = strategy.label();
    report.method = Method::Exact;
    report.nodes = n;

    Eigen::MatrixXd m(n, n);
    std::vector<std::string> failures(static_cast<std::size_t>(n));
    const auto solve_all = [&](const auto& chain) {
        const auto solve = [&](NodeId z, LinearSolver solver, LinearSolver* used) {
            if constexpr (std::is_same_v<std::decay_t<decltype(chain)>, ArcChain>) {
                return mfpt(g, chain, z, InitialStep::Uniform, solver, used);
            } else {
                return mfpt(g, chain, z, solver, used);
            }
        };
        LinearSolver route = LinearSolver::Automatic;
        m.col(0) = solve(0, LinearSolver::Automatic, &route);
#pragma omp parallel for schedule(dynamic)
        for (NodeId z = 1; z < n; ++z) {
            try {
                m.col(z) = solve(z, route, nullptr);
            } catch (const Error& e) {
                failures[z] = e.what();
            }
        }
    };
    if (strategy.has_memory()) solve_all(build_arc_chain(g, strategy));
    else solve_all(build_node_chain(g, strategy));
    for (NodeId z = 0; z < n; ++z) {
        if (!failures[z].empty()) throw UnreachableTarget("target " + std::to_string(z) + ": " + failures[z]);
    }

    report.target_gmfpt.resize(n);
    for (NodeId z = 0; z < n; ++z) report.target_gmfpt[z] = gmfpt(m, z);
    report.grmfpt = grmfpt(report.target_gmfpt);
    if (options.keep_pairs) report.pair_mfpt = std::move(m);
    return report;
}

std::string to_string(Method m) { return m == Method::Exact ? "exact" : "simulated"; }

}  // namespace walkmem

#pragma once

#include <cstdint>
#include <span>
#include <string>

#include <Eigen/Core>

#include "walkmem/chain.hpp"
#include "walkmem/report.hpp"

namespace walkmem {

enum class StateRole : std::uint8_t { Transient, Absorbing, Omitted };

/// Linear solver route for absorbing systems. `Automatic` picks sparse LU for
/// short rows and BiCGSTAB otherwise; BiCGSTAB falls back to sparse LU whenever
/// its answer does not certify.
enum class LinearSolver { Automatic, Direct, Iterative };

/// Mean time to absorption from every transient state of `p`.
///
/// Solves (I - Q) mu = 1, Q being `p` restricted to transient states, with
/// BiCGSTAB and falls back to a sparse LU factorization when the iterative
/// answer does not certify. The fundamental matrix is never formed.
/// Absorbing states get 0, omitted states NaN. Throws UnreachableTarget when a
/// transient state cannot reach an absorbing one, and when the residual
/// ||(I - Q) mu - 1||_inf exceeds 1e-10 * ||mu||_inf.
/// `used`, when given, receives the route that produced the answer.
Eigen::VectorXd absorption_times(const TransitionMatrix& p, std::span<const StateRole> roles,
                                 LinearSolver solver = LinearSolver::Automatic, LinearSolver* used = nullptr);

/// Absorption times for target z on an arc chain: states (y, z) absorb, states
/// (z, y) are omitted. Indexed by arc id.
Eigen::VectorXd mean_time_to_absorption(const Graph& g, const ArcChain& chain, NodeId z,
                                        LinearSolver solver = LinearSolver::Automatic, LinearSolver* used = nullptr);

/// Absorption times for target z on a node chain; entry z is 0.
Eigen::VectorXd mean_time_to_absorption(const Graph& g, const NodeChain& chain, NodeId z,
                                        LinearSolver solver = LinearSolver::Automatic, LinearSolver* used = nullptr);

/// How the first move out of the start node is drawn.
enum class InitialStep {
    /// Uniform over the start node's neighbors (memory walks have no previous
    /// node yet).
    Uniform,
    /// The strategy's own first-move distribution: uniform for memory
    /// strategies, the memoryless kernel otherwise.
    Strategy,
};

/// m(a, z) for every start a; entry z is NaN. On an arc chain,
/// m(a, z) = 1 + sum_b w(a, b) mu(a, b) with w the initial-step weights;
/// on a node chain m(a, z) = mu(a).
Eigen::VectorXd mfpt(const Graph& g, const ArcChain& chain, NodeId z,
                     InitialStep initial = InitialStep::Uniform, LinearSolver solver = LinearSolver::Automatic,
                     LinearSolver* used = nullptr);
Eigen::VectorXd mfpt(const Graph& g, const NodeChain& chain, NodeId z,
                     LinearSolver solver = LinearSolver::Automatic, LinearSolver* used = nullptr);

struct ExactOptions {
    /// Arc-state ceiling for memory strategies; larger graphs must be simulated.
    std::int64_t arc_budget = 50'000;
    bool keep_pairs = true;
    std::string network_name;
};

/// Exact MFPT report: one absorbing solve per target, run in parallel and
/// reduced in target order. Target 0 is solved first with the automatic
/// route; the route it ends up using is applied to every other target.
MfptReport exact_report(const Graph& g, const StrategySpec& strategy, const ExactOptions& options = {});

}  // namespace walkmem

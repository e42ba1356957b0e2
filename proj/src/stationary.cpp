#include "walkmem/stationary.hpp"

#include <vector>

#include <Eigen/SparseLU>

namespace walkmem {

namespace {

// Index of a state not reachable from state 0 along the transition structure
// (forward if `transpose` is false, backward otherwise), or -1.
Eigen::Index unreached_state(const TransitionMatrix& p, bool transpose) {
    const Eigen::Index n = p.rows();
    TransitionMatrix adj = transpose ? TransitionMatrix(p.transpose()) : p;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Eigen::Index> queue{0};
    seen[0] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
        for (TransitionMatrix::InnerIterator it(adj, queue[q]); it; ++it) {
            if (it.value() > 0.0 && !seen[it.col()]) {
                seen[it.col()] = 1;
                queue.push_back(it.col());
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!seen[i]) return i;
    }
    return -1;
}

}  // namespace

Eigen::VectorXd stationary_distribution(const TransitionMatrix& p) {
    const Eigen::Index n = p.rows();
    if (n == 0) throw InvalidArgument("empty chain");
    if (const auto s = unreached_state(p, false); s >= 0) {
        throw ReducibleChain("chain is reducible: state " + std::to_string(s) + " is unreachable from state 0");
    }
    if (const auto s = unreached_state(p, true); s >= 0) {
        throw ReducibleChain("chain is reducible: state 0 is unreachable from state " + std::to_string(s));
    }

    // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    std::vector<Eigen::Triplet<double, int>> entries;
    entries.reserve(static_cast<std::size_t>(p.nonZeros() + 2 * n));
    for (Eigen::Index r = 0; r < n; ++r) {
        for (TransitionMatrix::InnerIterator it(p, r); it; ++it) {
            if (it.col() != n - 1) entries.emplace_back(static_cast<int>(it.col()), static_cast<int>(r), it.value());
        }
    }
    for (Eigen::Index i = 0; i + 1 < n; ++i) entries.emplace_back(static_cast<int>(i), static_cast<int>(i), -1.0);
    for (Eigen::Index j = 0; j < n; ++j) entries.emplace_back(static_cast<int>(n - 1), static_cast<int>(j), 1.0);
    Eigen::SparseMatrix<double, Eigen::ColMajor, int> system(n, n);
    system.setFromTriplets(entries.begin(), entries.end());
    system.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double, Eigen::ColMajor, int>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(system);
    if (lu.info() != Eigen::Success) throw ReducibleChain("stationary system is singular: " + lu.lastErrorMessage());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs[n - 1] = 1.0;
    Eigen::VectorXd pi = lu.solve(rhs);
    pi += lu.solve(rhs - system * pi);
    // round-off can leave entries of order -1e-17
    pi = pi.cwiseMax(0.0);
    return pi / pi.sum();
}

OccupationDistribution stationary_occupation(const NodeChain& chain) {
    return stationary_distribution(chain.transitions);
}

OccupationDistribution stationary_occupation(const Graph& g, const ArcChain& chain) {
    const Eigen::VectorXd arc_pi = stationary_distribution(chain.transitions);
    OccupationDistribution node_pi = OccupationDistribution::Zero(g.node_count());
    for (ArcId a = 0; a < g.arc_count(); ++a) node_pi[g.arc_head(a)] += arc_pi[a];
    return node_pi;
}

}  // namespace walkmem

#pragma once

#include <cmath>

#include <Eigen/Core>

#include "walkmem/chain.hpp"
#include "walkmem/error.hpp"

namespace walkmem {

/// Per-node stationary occupation probabilities.
using OccupationDistribution = Eigen::VectorXd;

/// Left fixed point pi P = pi with sum(pi) = 1, solved as a linear system so
/// periodic chains are handled. Throws ReducibleChain naming a state that
/// cannot be reached from, or cannot return to, state 0.
Eigen::VectorXd stationary_distribution(const TransitionMatrix& p);

OccupationDistribution stationary_occupation(const NodeChain& chain);

/// Node occupation of an arc chain: pi(s) sums pi(r, s) over arcs into s.
OccupationDistribution stationary_occupation(const Graph& g, const ArcChain& chain);

/// Kullback-Leibler divergence of `occupation` from the uniform distribution,
/// sum_i P(i) log(P(i) N), natural log.
template <typename Derived>
typename Derived::Scalar kl_from_uniform(const Eigen::MatrixBase<Derived>& occupation) {
    using Scalar = typename Derived::Scalar;
    const auto n = static_cast<Scalar>(occupation.size());
    Scalar divergence(0);
    for (Eigen::Index i = 0; i < occupation.size(); ++i) {
        const Scalar p = occupation(i);
        if (!(p > Scalar(0))) {
            throw ReducibleChain("occupation of node " + std::to_string(i) +
                                 " is zero; the chain is not irreducible");
        }
        divergence += p * std::log(p * n);
    }
    return divergence;
}

}  // namespace walkmem

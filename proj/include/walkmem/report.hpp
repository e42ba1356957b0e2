#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <Eigen/Core>

#include "walkmem/graph.hpp"

namespace walkmem {

enum class Method { Exact, Simulated };

std::string to_string(Method m);

/// Mean first passage times of one strategy on one network.
struct MfptReport {
    std::string network;
    std::string strategy;
    Method method = Method::Exact;
    NodeId nodes = 0;

    /// m(a, z): mean steps from a to first reach z. NaN on the diagonal and,
    /// for sampled simulations, wherever a pair was never drawn. Empty when the
    /// caller asked not to keep the matrix.
    Eigen::MatrixXd pair_mfpt;
    /// g_z: mean of m(a, z) over a != z. NaN for targets a sampled simulation
    /// never drew.
    Eigen::VectorXd target_gmfpt;
    /// Graph MFPT, the mean of g_z over targets.
    double grmfpt = std::numeric_limits<double>::quiet_NaN();
    std::string normalization = "mean over targets of per-target GMFPT";

    // Simulation bookkeeping; zero / NaN for exact reports.
    std::int64_t pairs = 0;
    std::int64_t trajectories = 0;
    std::int64_t censored = 0;
    double standard_error = std::numeric_limits<double>::quiet_NaN();
};

/// Per-target GMFPT from the MFPT matrix: mean over column z, diagonal excluded.
template <typename Derived>
typename Derived::Scalar gmfpt(const Eigen::MatrixBase<Derived>& m, Eigen::Index z) {
    const Eigen::Index n = m.rows();
    typename Derived::Scalar sum(0);
    for (Eigen::Index a = 0; a < n; ++a) {
        if (a != z) sum += m(a, z);
    }
    return sum / static_cast<typename Derived::Scalar>(n - 1);
}

/// Graph MFPT from all per-target GMFPTs (average over targets).
template <typename Derived>
typename Derived::Scalar grmfpt(const Eigen::MatrixBase<Derived>& g) {
    return g.mean();
}

}  // namespace walkmem

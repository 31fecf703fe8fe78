#pragma once

// Perron-Frobenius data of nonnegative primitive matrices and the
// real-valued layer matrices built from a weighted graph.

#include "rotor/symbolic_graph.hpp"

#include <Eigen/Dense>

namespace rotor {

struct PerronData {
    double lambda = 0.0;
    /// Normalized so that sum(right) = 1 and left . right = 1.
    Eigen::VectorXd left;
    Eigen::VectorXd right;
    std::size_t iterations = 0;

    /// Rescaled so the first component is 1.
    Eigen::VectorXd raw_left() const { return left / left(0); }
    Eigen::VectorXd raw_right() const { return right / right(0); }
};

inline constexpr std::size_t kPerronIterationCap = 100000;

/// Dominant eigenvalue and positive eigenvectors by inverse iteration shifted
/// to the Collatz-Wielandt upper bound. Throws NonPrimitive, NoConvergence.
PerronData perron(const Eigen::MatrixXd& m);

Eigen::MatrixXd to_eigen(const BoolMatrix& m);

/// x sum_j y^j A_{s0+j}.
Eigen::MatrixXd layer_matrix(const WeightedGraph& graph, double x, double y);
/// x sum_j j y^j A_{s0+j}.
Eigen::MatrixXd weighted_layer_matrix(const WeightedGraph& graph, double x, double y);

} // namespace rotor

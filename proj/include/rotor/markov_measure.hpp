#pragma once

// The Markov measure matched to a direction: Pi_jk = a_jk r_k / r_j and
// q_j = l_j r_j, where a_jk are the entries of x0 sum_s y0^s A_{s0+s}.

#include "rotor/circle_map.hpp"
#include "rotor/entropy_solver.hpp"
#include "rotor/perron.hpp"
#include "rotor/symbolic_graph.hpp"

#include <Eigen/Dense>

namespace rotor {

struct MarkovMeasure {
    Eigen::MatrixXd Pi;
    Eigen::RowVectorXd q;
    double x0 = 0.0;
    double y0 = 0.0;
    double alpha = 0.0; ///< true units
    PerronData perron;  ///< of A(x0, y0)
};

/// Throws AlphaOutsideInterval or BracketFailure for unsolved directions.
MarkovMeasure build_measure(const WeightedGraph& graph, const DirectionSolution& solution);

/// -sum_jk q_j Pi_jk ln Pi_jk, in nats.
double measure_entropy(const MarkovMeasure& measure);

/// q_{w_0} Pi_{w_0 w_1} ... ; 0 for inadmissible words.
double cylinder_measure(const MarkovMeasure& measure, const Word& word);

/// sum_jk q_j Pi_jk k_jk in true weight units.
double expected_drift(const MarkovMeasure& measure, const WeightedGraph& graph);

struct DerivativeCheck {
    double lhs = 0.0; ///< central difference of det(B + eps X)
    double rhs = 0.0; ///< beta (l X r)
};

inline constexpr double kDerivativeStep = 1e-6;

/// D det(B)(X) = beta (l X r) for B with a simple zero eigenvalue, where beta
/// is the product of the nonzero eigenvalues and l, r are null vectors with
/// l r = 1. Throws ZeroNotSimple.
DerivativeCheck det_derivative_check(const Eigen::MatrixXd& B, const Eigen::MatrixXd& X);

} // namespace rotor

#include "rotor/markov_measure.hpp"

#include "rotor/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace rotor {

MarkovMeasure build_measure(const WeightedGraph& graph, const DirectionSolution& solution)
{
    solution.require_solved();
    const Eigen::MatrixXd a = layer_matrix(graph, solution.x0, solution.y0);
    MarkovMeasure mu;
    mu.x0 = solution.x0;
    mu.y0 = solution.y0;
    mu.alpha = solution.alpha_true;
    mu.perron = perron(a);

    const auto p = a.rows();
    const Eigen::VectorXd& r = mu.perron.right;
    const Eigen::VectorXd& l = mu.perron.left;
    mu.Pi = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index k = 0; k < p; ++k) mu.Pi(j, k) = a(j, k) * r(k) / (mu.perron.lambda * r(j));
        // Remove the residual of the eigen solve so rows sum to 1 exactly.
        mu.Pi.row(j) /= mu.Pi.row(j).sum();
    }
    mu.q = (l.array() * r.array()).matrix().transpose();
    mu.q /= mu.q.sum();
    return mu;
}

double measure_entropy(const MarkovMeasure& measure)
{
    double h = 0.0;
    for (Eigen::Index j = 0; j < measure.Pi.rows(); ++j)
        for (Eigen::Index k = 0; k < measure.Pi.cols(); ++k) {
            const double pi = measure.Pi(j, k);
            if (pi > 0) h -= measure.q(j) * pi * std::log(pi);
        }
    return h;
}

double cylinder_measure(const MarkovMeasure& measure, const Word& word)
{
    if (word.empty()) return 1.0;
    const auto p = measure.Pi.rows();
    for (int s : word)
        if (s < 0 || s >= p) return 0.0;
    double mass = measure.q(word[0]);
    for (std::size_t k = 1; k < word.size(); ++k) mass *= measure.Pi(word[k - 1], word[k]);
    return mass;
}

double expected_drift(const MarkovMeasure& measure, const WeightedGraph& graph)
{
    double drift = 0.0;
    for (const auto& e : graph.edges())
        drift += measure.q(e.from) * measure.Pi(e.from, e.to) * static_cast<double>(e.weight);
    return drift;
}

DerivativeCheck det_derivative_check(const Eigen::MatrixXd& B, const Eigen::MatrixXd& X)
{
    if (B.rows() != B.cols() || X.rows() != B.rows() || X.cols() != B.cols() || B.rows() == 0)
        throw Error(ErrorCode::InvalidArgument, "B and X must be square matrices of equal size");

    Eigen::EigenSolver<Eigen::MatrixXd> es(B, false);
    std::vector<std::complex<double>> eig(es.eigenvalues().data(), es.eigenvalues().data() + B.rows());
    std::sort(eig.begin(), eig.end(), [](auto a, auto b) { return std::abs(a) < std::abs(b); });
    if (std::abs(eig[0]) >= 1e-9) throw Error(ErrorCode::ZeroNotSimple, "B has no zero eigenvalue");
    if (eig.size() > 1 && std::abs(eig[1]) <= 1e-6) throw Error(ErrorCode::ZeroNotSimple, "zero eigenvalue of B is not simple");
    std::complex<double> beta = 1.0;
    for (std::size_t k = 1; k < eig.size(); ++k) beta *= eig[k];

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto last = B.rows() - 1;
    const Eigen::VectorXd r = svd.matrixV().col(last);
    Eigen::VectorXd l = svd.matrixU().col(last);
    const double lr = l.dot(r);
    if (std::abs(lr) < 1e-12) throw Error(ErrorCode::ZeroNotSimple, "left and right null vectors are orthogonal");
    l /= lr;

    const double eps = kDerivativeStep;
    DerivativeCheck out;
    out.lhs = ((B + eps * X).determinant() - (B - eps * X).determinant()) / (2.0 * eps);
    out.rhs = beta.real() * l.dot(X * r);
    return out;
}

} // namespace rotor

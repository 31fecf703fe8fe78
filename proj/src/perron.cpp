#include "rotor/perron.hpp"

#include "rotor/error.hpp"

#include <cmath>
#include <limits>

namespace rotor {

namespace {

struct Dominant {
    Eigen::VectorXd vector;
    std::size_t iterations;
};

// Positive eigenvector for the spectral radius of a primitive matrix.
Dominant dominant_vector(const Eigen::MatrixXd& m)
{
    const auto n = m.rows();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / static_cast<double>(n);

    // A few plain steps of (M + E) smooth the start vector.
    for (int k = 0; k < 8; ++k) {
        v = m * v + v;
        v /= v.sum();
    }

    double best_gap = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best = v;
    std::size_t stall = 0;
    for (std::size_t it = 1; it <= kPerronIterationCap; ++it) {
        const Eigen::VectorXd mv = m * v;
        const Eigen::ArrayXd ratio = mv.array() / v.array();
        const double hi = ratio.maxCoeff();
        const double lo = ratio.minCoeff();
        const double gap = (hi - lo) / hi;
        if (gap < best_gap) {
            best_gap = gap;
            best = v;
            stall = 0;
        } else if (++stall >= 5) {
            return {best, it};
        }
        if (gap <= 4 * std::numeric_limits<double>::epsilon()) return {v, it};

        // hi >= lambda, so (hi E - M)^{-1} is nonnegative and lambda is the
        // eigenvalue nearest the shift.
        Eigen::VectorXd w = (hi * id - m).partialPivLu().solve(v);
        if (!w.allFinite()) return {v, it};
        w = w.cwiseAbs();
        const double s = w.sum();
        if (!(s > 0) || !std::isfinite(s)) return {v, it};
        v = w / s;
        if ((v.array() <= 0).any()) return {best, it};
    }
    if (best_gap > 1e-10) throw Error(ErrorCode::NoConvergence, "Perron iteration did not converge");
    return {best, kPerronIterationCap};
}

} // namespace

PerronData perron(const Eigen::MatrixXd& m)
{
    if (m.rows() != m.cols() || m.rows() == 0) throw Error(ErrorCode::InvalidArgument, "Perron data needs a square matrix");
    if (!m.allFinite() || (m.array() < 0).any()) throw Error(ErrorCode::InvalidArgument, "matrix must be finite and nonnegative");
    const auto n = static_cast<std::size_t>(m.rows());
    BoolMatrix support(n, n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) support(i, j) = m(i, j) > 0 ? 1 : 0;
    if (!primitivity_exponent(support)) throw Error(ErrorCode::NonPrimitive, "matrix is not primitive");

    const auto right = dominant_vector(m);
    const auto left = dominant_vector(m.transpose());
    PerronData out;
    out.right = right.vector / right.vector.sum();
    out.left = left.vector / left.vector.dot(out.right);
    out.lambda = out.left.dot(m * out.right);
    out.iterations = right.iterations + left.iterations;
    return out;
}

Eigen::MatrixXd to_eigen(const BoolMatrix& m)
{
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

Eigen::MatrixXd layer_matrix(const WeightedGraph& graph, double x, double y)
{
    const auto p = static_cast<Eigen::Index>(graph.size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p, p);
    for (const auto& e : graph.edges())
        out(e.from, e.to) = x * std::pow(y, static_cast<double>(e.weight - graph.s0()));
    return out;
}

Eigen::MatrixXd weighted_layer_matrix(const WeightedGraph& graph, double x, double y)
{
    const auto p = static_cast<Eigen::Index>(graph.size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p, p);
    for (const auto& e : graph.edges()) {
        const auto j = static_cast<double>(e.weight - graph.s0());
        out(e.from, e.to) = x * j * std::pow(y, j);
    }
    return out;
}

} // namespace rotor

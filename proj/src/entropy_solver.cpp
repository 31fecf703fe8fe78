#include "rotor/entropy_solver.hpp"

#include "rotor/error.hpp"
#include "rotor/parallel.hpp"
#include "rotor/perron.hpp"

#include <cmath>
#include <numbers>

namespace rotor {

namespace {

constexpr double kZeroTolerance = 1e-12;

} // namespace

double DirectionSpec::theta() const
{
    return std::atan2(1.0, alpha_true);
}

std::string_view to_string(SolveStatus status)
{
    switch (status) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::OutsideInterval: return "outside_interval";
    case SolveStatus::Boundary: return "boundary";
    }
    return "unknown";
}

void DirectionSolution::require_solved() const
{
    if (status == SolveStatus::OutsideInterval)
        throw Error(ErrorCode::AlphaOutsideInterval, "alpha = " + std::to_string(alpha_true) + " lies outside the rotation interval");
    if (status == SolveStatus::Boundary)
        throw Error(ErrorCode::BracketFailure, "alpha = " + std::to_string(alpha_true) + " is only attained at the edge of the y bracket");
}

double AsymptoticCount::value() const
{
    return sign * std::exp(log_magnitude);
}

double q_value(const BivarPoly& h, double x, double y)
{
    const Partials d = eval_with_partials(h, x, y);
    const double xhx = x * d.dx;
    const double yhy = y * d.dy;
    return -xhx * yhy * yhy - yhy * xhx * xhx
           - x * x * y * y * (d.dy * d.dy * d.dxx + d.dx * d.dx * d.dyy - 2.0 * d.dx * d.dy * d.dxy);
}

EntropyModel::EntropyModel(WeightedGraph graph)
    : graph_(std::move(graph)),
      h_(denominator_H(graph_)),
      n_(numerator_matrix(graph_)),
      interval_(rotation_interval(graph_))
{
    if (!primitivity_exponent(graph_.transitions())) throw Error(ErrorCode::NonPrimitive, "transition matrix is not primitive");
}

LayerSpectrum EntropyModel::layer_spectral_radius(double y) const
{
    if (!(y > 0) || !std::isfinite(y)) throw Error(ErrorCode::InvalidArgument, "y must be positive and finite");
    const Eigen::MatrixXd m = layer_matrix(graph_, 1.0, y);
    const PerronData pd = perron(m);
    const double tilt = pd.left.dot(weighted_layer_matrix(graph_, 1.0, y) * pd.right);
    return {pd.lambda, tilt / pd.left.dot(m * pd.right)};
}

DirectionSolution EntropyModel::finish(DirectionSolution sol) const
{
    const double rho = layer_spectral_radius(sol.y0).rho;
    sol.x0 = 1.0 / rho;
    sol.entropy = std::log(rho) - sol.alpha_shifted * std::log(sol.y0);
    const Partials d = eval_with_partials(h_, sol.x0, sol.y0);
    sol.residual_H = std::abs(d.value);
    sol.residual_stationarity = std::abs(sol.alpha_shifted * sol.x0 * d.dx - sol.y0 * d.dy);
    sol.Q = q_value(h_, sol.x0, sol.y0);
    sol.Q_nonzero = std::abs(sol.Q) > kZeroTolerance;
    for (std::size_t j = 0; j < graph_.size(); ++j)
        if (std::abs(n_(j, j).eval(sol.x0, sol.y0)) > kZeroTolerance) sol.f_nonzero_diag = true;
    return sol;
}

DirectionSolution EntropyModel::solve(const DirectionSpec& dir) const
{
    DirectionSolution sol;
    sol.alpha_true = dir.alpha_true;
    sol.alpha_shifted = dir.alpha_shifted(graph_.s0());
    const double lo = interval_.lo.get_d();
    const double hi = interval_.hi.get_d();
    const double alpha = dir.alpha_true;

    if (!std::isfinite(alpha) || alpha < lo - kEndpointMargin || alpha > hi + kEndpointMargin) {
        sol.status = SolveStatus::OutsideInterval;
        return sol;
    }
    if (interval_.lo == interval_.hi) {
        // Every cycle has the same mean, so H does not depend on the
        // direction and y = 1 is the solution.
        sol.y0 = 1.0;
        return finish(sol);
    }

    auto boundary = [&](double y_edge) {
        sol.status = SolveStatus::Boundary;
        sol.on_boundary = true;
        sol.y0 = y_edge;
        return finish(sol);
    };
    if (alpha <= lo + kEndpointMargin) return boundary(kBracketLow);
    if (alpha >= hi - kEndpointMargin) return boundary(kBracketHigh);

    const double target = sol.alpha_shifted;
    double t_lo = std::log(kBracketLow);
    double t_hi = std::log(kBracketHigh);
    if (layer_spectral_radius(kBracketLow).drift > target) return boundary(kBracketLow);
    if (layer_spectral_radius(kBracketHigh).drift < target) return boundary(kBracketHigh);
    for (int k = 0; k < kBisectionSteps; ++k) {
        const double mid = 0.5 * (t_lo + t_hi);
        if (mid <= t_lo || mid >= t_hi) break;
        if (layer_spectral_radius(std::exp(mid)).drift < target) t_lo = mid;
        else t_hi = mid;
    }
    sol.y0 = std::exp(0.5 * (t_lo + t_hi));
    return finish(sol);
}

AsymptoticCount EntropyModel::asymptotic_count(std::size_t i, std::size_t j, const DirectionSolution& sol, std::size_t n) const
{
    sol.require_solved();
    if (i >= graph_.size() || j >= graph_.size()) throw Error(ErrorCode::InvalidArgument, "entry index out of range");
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    const double f = n_(i, j).eval(sol.x0, sol.y0);
    if (std::abs(f) <= kZeroTolerance)
        throw Error(ErrorCode::DegenerateEntry, "numerator vanishes at (x0, y0)");
    if (!sol.Q_nonzero) throw Error(ErrorCode::DegenerateEntry, "Q vanishes at (x0, y0)");
    const Partials d = eval_with_partials(h_, sol.x0, sol.y0);
    const double nd = static_cast<double>(n);
    const double arg = -sol.x0 * d.dx / (nd * sol.Q);
    if (!(arg > 0)) throw Error(ErrorCode::DegenerateEntry, "-x0 H_x / Q is not positive");

    AsymptoticCount out;
    out.sign = f < 0 ? -1 : 1;
    out.log_magnitude = std::log(std::abs(f)) - 0.5 * std::log(2.0 * std::numbers::pi) - nd * std::log(sol.x0)
                        - sol.alpha_shifted * nd * std::log(sol.y0) + 0.5 * std::log(arg);
    return out;
}

EntropyCurve EntropyModel::curve(std::size_t samples) const
{
    if (samples < 2) throw Error(ErrorCode::InvalidArgument, "entropy curve needs at least 2 samples");
    EntropyCurve out;
    out.interval = interval_;
    const double lo = interval_.lo.get_d();
    const double hi = interval_.hi.get_d();
    if (interval_.lo == interval_.hi) {
        out.rows.push_back(solve({lo}));
        return out;
    }
    std::vector<double> alphas(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double c = std::cos((2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi / (2.0 * static_cast<double>(samples)));
        alphas[samples - 1 - k] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * c;
    }
    out.rows.resize(samples);
    parallel_for(samples, [&](std::size_t k) { out.rows[k] = solve({alphas[k]}); });
    return out;
}

MaxDirection EntropyModel::max_entropy_direction() const
{
    const LayerSpectrum at_one = layer_spectral_radius(1.0);
    MaxDirection out;
    out.alpha_max = at_one.drift + static_cast<double>(graph_.s0());
    out.theta_max = DirectionSpec{out.alpha_max}.theta();
    out.h_top = std::log(at_one.rho);
    return out;
}

LayerSpectrum layer_spectral_radius(const WeightedGraph& graph, double y)
{
    return EntropyModel(graph).layer_spectral_radius(y);
}

DirectionSolution solve_direction(const WeightedGraph& graph, const DirectionSpec& dir)
{
    return EntropyModel(graph).solve(dir);
}

AsymptoticCount asymptotic_count(const WeightedGraph& graph, std::size_t i, std::size_t j, const DirectionSpec& dir, std::size_t n)
{
    const EntropyModel model(graph);
    return model.asymptotic_count(i, j, model.solve(dir), n);
}

EntropyCurve entropy_curve(const WeightedGraph& graph, std::size_t samples)
{
    return EntropyModel(graph).curve(samples);
}

MaxDirection max_entropy_direction(const WeightedGraph& graph)
{
    return EntropyModel(graph).max_entropy_direction();
}

} // namespace rotor

#pragma once

// Directional entropy from the minimal solution of
//   H(x, y) = 0,  alpha x H_x = y H_y,
// found through the spectral radius of sum_j y^j A_{s0+j}.

#include "rotor/genfun.hpp"
#include "rotor/rational.hpp"
#include "rotor/symbolic_graph.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace rotor {

/// Direction given by alpha = cot(theta) in true (unshifted) weight units.
struct DirectionSpec {
    double alpha_true = 0.0;

    static DirectionSpec from_rational(const Rational& alpha) { return {alpha.get_d()}; }
    double alpha_shifted(long s0) const { return alpha_true - static_cast<double>(s0); }
    /// Principal arccot, in (0, pi).
    double theta() const;
};

enum class SolveStatus {
    Solved,
    /// alpha outside the rotation interval; entropy is 0.
    OutsideInterval,
    /// alpha at an interval endpoint (or the drift bracket failed); the
    /// entropy is the one-sided limit at the edge of the y bracket.
    Boundary,
};

std::string_view to_string(SolveStatus status);

struct DirectionSolution {
    double alpha_true = 0.0;
    double alpha_shifted = 0.0;
    SolveStatus status = SolveStatus::Solved;
    double x0 = 0.0;
    double y0 = 0.0;
    double entropy = 0.0;
    double Q = 0.0;
    double residual_H = 0.0;           ///< |H(x0, y0)|
    double residual_stationarity = 0.0; ///< |alpha x0 H_x - y0 H_y|
    bool f_nonzero_diag = false;        ///< some N_jj(x0, y0) != 0
    bool Q_nonzero = false;
    bool on_boundary = false;

    bool solved() const noexcept { return status == SolveStatus::Solved; }
    /// Throws AlphaOutsideInterval or BracketFailure unless solved.
    void require_solved() const;
};

struct LayerSpectrum {
    double rho = 0.0;   ///< spectral radius of sum_j y^j A_{s0+j}
    double drift = 0.0; ///< y rho'(y) / rho(y), in shifted units
};

struct AsymptoticCount {
    /// ln|a_{n, alpha n}| of the predicted coefficient.
    double log_magnitude = 0.0;
    int sign = 1;

    double value() const;
};

struct EntropyCurve {
    RotationInterval interval;
    std::vector<DirectionSolution> rows; ///< ascending alpha
};

struct MaxDirection {
    double alpha_max = 0.0;
    double theta_max = 0.0;
    double h_top = 0.0;
};

inline constexpr double kResidualTolerance = 1e-10;
inline constexpr double kEndpointMargin = 1e-9;
inline constexpr double kBracketLow = 1e-12;
inline constexpr double kBracketHigh = 1e12;
inline constexpr int kBisectionSteps = 200;

/// Precomputes H, the numerator matrix and the rotation interval of a
/// primitive graph. Immutable; safe to share across threads.
class EntropyModel {
public:
    /// Throws NonPrimitive.
    explicit EntropyModel(WeightedGraph graph);

    const WeightedGraph& graph() const noexcept { return graph_; }
    const BivarPoly& H() const noexcept { return h_; }
    const PolyMatrix& numerators() const noexcept { return n_; }
    const RotationInterval& interval() const noexcept { return interval_; }

    LayerSpectrum layer_spectral_radius(double y) const;
    DirectionSolution solve(const DirectionSpec& dir) const;
    /// Predicted G_ij coefficient of x^n y^{alpha n}, i.e. the count of words
    /// of length n + 1 from i to j with shifted weight alpha n.
    /// Throws DegenerateEntry when f(x0, y0) or Q(x0, y0) vanishes.
    AsymptoticCount asymptotic_count(std::size_t i, std::size_t j, const DirectionSolution& solution, std::size_t n) const;
    /// Chebyshev-spaced directions strictly inside the rotation interval.
    EntropyCurve curve(std::size_t samples) const;
    MaxDirection max_entropy_direction() const;

private:
    DirectionSolution finish(DirectionSolution sol) const;

    WeightedGraph graph_;
    BivarPoly h_;
    PolyMatrix n_;
    RotationInterval interval_;
};

/// Q(x, y) = -x H_x (y H_y)^2 - y H_y (x H_x)^2
///           - x^2 y^2 (H_y^2 H_xx + H_x^2 H_yy - 2 H_x H_y H_xy).
double q_value(const BivarPoly& h, double x, double y);

LayerSpectrum layer_spectral_radius(const WeightedGraph& graph, double y);
DirectionSolution solve_direction(const WeightedGraph& graph, const DirectionSpec& dir);
AsymptoticCount asymptotic_count(const WeightedGraph& graph, std::size_t i, std::size_t j, const DirectionSpec& dir, std::size_t n);
EntropyCurve entropy_curve(const WeightedGraph& graph, std::size_t samples);
MaxDirection max_entropy_direction(const WeightedGraph& graph);

} // namespace rotor

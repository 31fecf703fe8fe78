#include "doctest.h"
#include "support.hpp"

#include "rotor/entropy_solver.hpp"
#include "rotor/error.hpp"
#include "rotor/perron.hpp"
#include "rotor/word_counts.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

using namespace rotor;
using rotor::testing::fixture_closed_form;
using rotor::testing::fixture_graph;
using rotor::testing::random_primitive_graph;

namespace {

const double kPhiInv = (std::sqrt(5.0) - 1.0) / 2.0;
const double kLambda = 1.839286755214161;
const double kAlphaMax = 0.2821918053244515;

// Spectral radius by a dense eigensolver.
double eigen_radius(const Eigen::MatrixXd& m)
{
    return Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues().cwiseAbs().maxCoeff();
}

ErrorCode error_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("direction angles")
{
    CHECK(DirectionSpec{1.0}.theta() == doctest::Approx(std::numbers::pi / 4));
    CHECK(DirectionSpec{0.0}.theta() == doctest::Approx(std::numbers::pi / 2));
    CHECK(DirectionSpec{-1.0}.theta() == doctest::Approx(3 * std::numbers::pi / 4));
    CHECK(DirectionSpec::from_rational(make_rational(1, 4)).alpha_true == 0.25);
    CHECK(DirectionSpec{2.5}.alpha_shifted(2) == 0.5);
}

TEST_CASE("layer spectral radius and drift")
{
    const EntropyModel model(fixture_graph());
    const auto at_one = model.layer_spectral_radius(1.0);
    CHECK(at_one.rho == doctest::Approx(kLambda).epsilon(1e-13));
    CHECK(at_one.drift == doctest::Approx(kAlphaMax).epsilon(1e-12));

    // Drift is y rho'(y) / rho(y); check against a dense eigensolver and a
    // central difference in ln y.
    const auto& g = model.graph();
    for (double y : {0.01, 0.3, 1.0, 4.0, 100.0}) {
        const auto s = model.layer_spectral_radius(y);
        CHECK(s.rho == doctest::Approx(eigen_radius(layer_matrix(g, 1.0, y))).epsilon(1e-12));
        const double e = 1e-5;
        const double up = std::log(eigen_radius(layer_matrix(g, 1.0, y * std::exp(e))));
        const double down = std::log(eigen_radius(layer_matrix(g, 1.0, y * std::exp(-e))));
        CHECK(s.drift == doctest::Approx((up - down) / (2 * e)).epsilon(1e-7));
    }
    CHECK_THROWS_AS(model.layer_spectral_radius(0.0), Error);

    const WeightedGraph flat(2, {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}});
    for (double y : {0.1, 1.0, 10.0}) {
        const auto s = layer_spectral_radius(flat, y);
        CHECK(s.rho == doctest::Approx(2.0));
        CHECK(s.drift == 0.0);
    }
}

TEST_CASE("drift is nondecreasing in y")
{
    std::mt19937 rng(31);
    std::vector<WeightedGraph> graphs{fixture_graph()};
    for (int k = 0; k < 5; ++k) graphs.push_back(random_primitive_graph(rng, 2 + k % 3, 2));
    for (const auto& g : graphs) {
        const EntropyModel model(g);
        double prev = -1.0;
        for (int k = -40; k <= 40; ++k) {
            const double drift = model.layer_spectral_radius(std::pow(10.0, k / 4.0)).drift;
            CHECK(drift >= prev - 1e-12);
            CHECK(drift >= -1e-12);
            CHECK(drift <= g.rho() + 1e-12);
            prev = drift;
        }
    }
}

TEST_CASE("solutions match the closed forms")
{
    const EntropyModel model(fixture_graph());
    for (int k = 0; k < 25; ++k) {
        const double alpha = 0.02 + 0.46 * k / 24.0;
        const auto sol = model.solve({alpha});
        REQUIRE(sol.solved());
        const auto [x, y] = fixture_closed_form(alpha);
        CHECK(sol.x0 == doctest::Approx(x).epsilon(1e-10));
        CHECK(sol.y0 == doctest::Approx(y).epsilon(1e-10));
        CHECK(sol.entropy == doctest::Approx(-std::log(x) - alpha * std::log(y)).epsilon(1e-10));
        CHECK(sol.residual_H < kResidualTolerance);
        CHECK(sol.residual_stationarity < kResidualTolerance);
        CHECK(eigen_radius(layer_matrix(model.graph(), sol.x0, sol.y0)) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(sol.entropy >= 0.0);
        CHECK(sol.f_nonzero_diag);
        CHECK(sol.Q_nonzero);
        CHECK_FALSE(sol.on_boundary);
    }
}

TEST_CASE("direction alpha = 1/4")
{
    const auto sol = solve_direction(fixture_graph(), {0.25});
    CHECK(sol.x0 == doctest::Approx(kPhiInv).epsilon(1e-12));
    CHECK(sol.y0 == doctest::Approx(kPhiInv).epsilon(1e-12));
    CHECK(sol.entropy == doctest::Approx(1.25 * std::log(1.0 / kPhiInv)).epsilon(1e-12));
}

TEST_CASE("maximal entropy direction")
{
    const auto g = fixture_graph();
    const auto best = max_entropy_direction(g);
    CHECK(best.alpha_max == doctest::Approx(kAlphaMax).epsilon(1e-12));
    CHECK(best.h_top == doctest::Approx(std::log(kLambda)).epsilon(1e-12));
    CHECK(best.theta_max == doctest::Approx(std::atan2(1.0, kAlphaMax)));
    const auto sol = solve_direction(g, {best.alpha_max});
    CHECK(sol.y0 == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sol.entropy == doctest::Approx(best.h_top).epsilon(1e-8));

    // Rows from state 0 have weight 0 and rows from state 1 weight 1; the
    // Perron vectors are uniform so the drift is 2/4.
    const WeightedGraph split(2, {{0, 0, 0}, {0, 1, 0}, {1, 0, 1}, {1, 1, 1}});
    CHECK(max_entropy_direction(split).alpha_max == doctest::Approx(0.5));
    CHECK(max_entropy_direction(split).h_top == doctest::Approx(std::log(2.0)));

    const WeightedGraph raised(2, {{0, 0, 2}, {0, 1, 2}, {1, 0, 2}, {1, 1, 2}});
    CHECK(max_entropy_direction(raised).alpha_max == doctest::Approx(2.0));
}

TEST_CASE("directions outside or on the edge of the interval")
{
    const EntropyModel model(fixture_graph());
    const auto outside = model.solve({0.75});
    CHECK(outside.status == SolveStatus::OutsideInterval);
    CHECK(outside.entropy == 0.0);
    CHECK(error_of([&] { outside.require_solved(); }) == ErrorCode::AlphaOutsideInterval);
    CHECK(model.solve({-0.1}).status == SolveStatus::OutsideInterval);

    for (double alpha : {0.0, 0.5}) {
        const auto edge = model.solve({alpha});
        CHECK(edge.status == SolveStatus::Boundary);
        CHECK(edge.on_boundary);
        CHECK(edge.entropy < 1e-6);
        CHECK(error_of([&] { edge.require_solved(); }) == ErrorCode::BracketFailure);
    }
    CHECK(to_string(SolveStatus::Boundary) == "boundary");
}

TEST_CASE("single-layer graphs")
{
    const WeightedGraph flat(2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}});
    const EntropyModel model(flat);
    const auto sol = model.solve({1.0});
    CHECK(sol.solved());
    CHECK(sol.y0 == 1.0);
    CHECK(sol.x0 == doctest::Approx(0.5));
    CHECK(sol.entropy == doctest::Approx(std::log(2.0)));
    // H does not depend on y, so Q vanishes and the prefactor is undefined.
    CHECK_FALSE(sol.Q_nonzero);
    CHECK(error_of([&] { model.asymptotic_count(0, 0, sol, 10); }) == ErrorCode::DegenerateEntry);

    const auto curve = model.curve(11);
    REQUIRE(curve.rows.size() == 1);
    CHECK(curve.rows[0].alpha_true == 1.0);
    CHECK(curve.rows[0].entropy == doctest::Approx(std::log(2.0)));

    CHECK(error_of([] { EntropyModel(WeightedGraph(2, {{0, 1, 0}, {1, 0, 0}})); }) == ErrorCode::NonPrimitive);
}

TEST_CASE("entropy curve shape")
{
    const EntropyModel model(fixture_graph());
    const auto curve = model.curve(101);
    REQUIRE(curve.rows.size() == 101);
    CHECK(curve.interval.lo == 0);
    CHECK(curve.interval.hi == make_rational(1, 2));
    const double h_top = std::log(kLambda);
    std::size_t peak = 0;
    for (std::size_t k = 0; k < curve.rows.size(); ++k) {
        const auto& row = curve.rows[k];
        CHECK(row.solved());
        CHECK(row.alpha_true > 0.0);
        CHECK(row.alpha_true < 0.5);
        CHECK(row.entropy <= h_top + 1e-12);
        if (k > 0) CHECK(row.alpha_true > curve.rows[k - 1].alpha_true);
        if (row.entropy > curve.rows[peak].entropy) peak = k;
    }
    CHECK(curve.rows[peak].entropy == doctest::Approx(h_top).epsilon(1e-4));
    CHECK(std::abs(curve.rows[peak].alpha_true - kAlphaMax) < 0.02);

    // Concavity on the nonuniform grid: slopes decrease.
    for (std::size_t k = 1; k + 1 < curve.rows.size(); ++k) {
        const auto& a = curve.rows[k - 1];
        const auto& b = curve.rows[k];
        const auto& c = curve.rows[k + 1];
        const double left = (b.entropy - a.entropy) / (b.alpha_true - a.alpha_true);
        const double right = (c.entropy - b.entropy) / (c.alpha_true - b.alpha_true);
        CHECK(right <= left + 1e-6);
    }
    CHECK(curve.rows.front().entropy < 0.01);
    CHECK(curve.rows.back().entropy < 0.01);
    CHECK_THROWS_AS(model.curve(1), Error);
}

TEST_CASE("curve does not depend on the thread count")
{
    const EntropyModel model(fixture_graph());
    ::setenv("ROTOR_THREADS", "1", 1);
    const auto serial = model.curve(33);
    ::setenv("ROTOR_THREADS", "4", 1);
    const auto threaded = model.curve(33);
    ::setenv("ROTOR_THREADS", "zero", 1);
    CHECK(error_of([&] { model.curve(33); }) == ErrorCode::InvalidArgument);
    ::unsetenv("ROTOR_THREADS");
    for (std::size_t k = 0; k < serial.rows.size(); ++k) {
        CHECK(serial.rows[k].alpha_true == threaded.rows[k].alpha_true);
        CHECK(serial.rows[k].entropy == threaded.rows[k].entropy);
    }
}

TEST_CASE("asymptotic counts approach exact counts")
{
    const EntropyModel model(fixture_graph());
    const auto sol = model.solve({0.25});
    double prev_gap = 1.0;
    for (std::size_t n : {250, 500, 1000}) {
        const BigInt exact = count_L_entry(model.graph(), n + 1, static_cast<long>(n / 4), 2, 2);
        const auto predicted = model.asymptotic_count(2, 2, sol, n);
        CHECK(predicted.sign == 1);
        const double ratio = std::exp(log(exact) - predicted.log_magnitude);
        const double gap = std::abs(ratio - 1.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.03);

    // Entry (1, 1) has numerator 1 - x, which does not vanish at x0.
    CHECK(model.asymptotic_count(1, 1, sol, 100).log_magnitude > 0);
    CHECK(error_of([&] { model.asymptotic_count(0, 0, model.solve({0.75}), 10); }) == ErrorCode::AlphaOutsideInterval);
    CHECK_THROWS_AS(model.asymptotic_count(3, 0, sol, 10), Error);
}

TEST_CASE("finite-r estimates stay below the directional entropy")
{
    const auto g = fixture_graph();
    const double h = solve_direction(g, {0.25}).entropy;
    double prev = 0.0;
    for (long r : {2L, 4L, 6L}) {
        const auto est = finite_r_entropy(g, {make_rational(1, 4), r}, {200, 400, 800});
        CHECK(est.extrapolated < h + 0.01);
        CHECK(est.extrapolated > prev);
        prev = est.extrapolated;
    }
}

#include "doctest.h"
#include "support.hpp"

#include "rotor/complexity_lab.hpp"
#include "rotor/error.hpp"
#include "rotor/word_counts.hpp"

#include <cmath>

using namespace rotor;
using rotor::testing::data_path;
using rotor::testing::fixture_partition;

namespace {

Rational q(long a, long b = 1)
{
    return make_rational(a, b);
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

// Exact re-verification of a separated set: every orbit stays in the window
// and every pair separates at some time.
void check_separated(const MarkovPartition& part, const WindowSpec& window, const SeparationResult& res)
{
    const auto& spec = part.as_spec();
    std::vector<std::vector<Rational>> orbits;
    for (const auto& x : res.points) {
        CHECK(orbit_in_window(spec, x, window, res.T - 1));
        orbits.push_back(lift_iterate(spec, x, res.T - 1));
    }
    for (std::size_t a = 0; a < orbits.size(); ++a)
        for (std::size_t b = a + 1; b < orbits.size(); ++b) CHECK(orbits_separated(orbits[a], orbits[b], res.epsilon));
    CHECK(res.points.size() == res.set_size);
}

} // namespace

TEST_CASE("window membership")
{
    const auto w = WindowSpec::strip(q(1, 4), 2);
    CHECK(w.half_width() == std::optional<long>(2));
    CHECK(w.contains(q(-2), 0));
    CHECK(w.contains(q(3), 4));
    CHECK_FALSE(w.contains(q(7, 2), 4));
    CHECK_FALSE((WindowSpec{q(0), q(1, 2), q(0)}.half_width()));
    CHECK(w.theta() == doctest::Approx(std::atan2(1.0, 0.25)));
}

TEST_CASE("epsilon_m of the fixture")
{
    const auto part = fixture_partition();
    const auto g = build_graph(part);
    CHECK(epsilon_m(part, g, 1) == q(1, 3));
    CHECK(epsilon_m(part, g, 2) == q(1, 6));
    CHECK(epsilon_m(part, g, 3) == q(1, 12));
    CHECK_THROWS_AS(epsilon_m(part, g, 0), Error);
}

TEST_CASE("orbits in windows")
{
    const auto spec = fixture_partition().as_spec();
    CHECK(lift(spec, q(2, 3)) == q(2, 3));
    const WindowSpec flat{q(0), q(1), q(0)};
    for (std::size_t T : {0, 1, 5, 12}) CHECK(orbit_in_window(spec, q(2, 3), flat, T));
    CHECK_FALSE(orbit_in_window(spec, q(2, 3), WindowSpec{q(0), q(1), q(1, 2)}, 10));
    CHECK(orbit_in_window(spec, q(1, 5), WindowSpec{q(0), q(1, 4), q(7)}, 0));

    CHECK(orbits_separated({q(0), q(1, 2)}, {q(0), q(1, 3)}, q(1, 6)));
    CHECK_FALSE(orbits_separated({q(0), q(1, 2)}, {q(0), q(1, 3)}, q(1, 5)));
}

TEST_CASE("separated sets lie within the word-count bracket")
{
    const auto part = fixture_partition();
    const auto g = build_graph(part);
    const Rational alpha = q(1, 4);
    const auto window = WindowSpec::strip(alpha, 2);
    for (const Rational& eps : {q(1, 6), q(1, 12)}) {
        for (std::size_t T : {2, 4, 6}) {
            const auto res = separated_set(part, g, window, eps, T, 2);
            check_separated(part, window, res);
            REQUIRE(res.lower_bound);
            REQUIRE(res.upper_bound);
            CHECK(*res.lower_bound <= res.set_size);
            CHECK(res.set_size <= *res.upper_bound);
            const BigInt upper = floor(1 / eps) * count_B(g, T, {alpha, 3}).total();
            CHECK(*res.upper_bound == upper);
            BigInt blocks;
            mpz_ui_pow_ui(blocks.get_mpz_t(), 3, T / 2);
            CHECK(*res.lower_bound == ceil(Rational(count_B(g, T, {alpha, 2}).total(), blocks)));
        }
    }
}

TEST_CASE("surviving words are within one of the final orbit point")
{
    const auto part = fixture_partition();
    const auto g = build_graph(part);
    const auto window = WindowSpec::strip(q(1, 4), 2);
    const auto res = separated_set(part, g, window, q(1, 6), 6, 2);
    REQUIRE_FALSE(res.surviving_words.empty());
    for (const auto& w : res.surviving_words) {
        const auto c = cylinder(part, w).interval;
        const long v = word_weight(g, w);
        for (const Rational& x : {c.lo, Rational((c.lo + c.hi) / 2), c.hi}) {
            const long m = floor(lift_iterate(part.as_spec(), x, res.T - 1).back()).get_si();
            CHECK(std::abs(v - m) <= 1);
        }
    }
}

TEST_CASE("separated sets grow with finer resolution and wider windows")
{
    const auto part = fixture_partition();
    const auto g = build_graph(part);
    for (std::size_t T : {2, 4, 6}) {
        const auto coarse = separated_set(part, g, WindowSpec::strip(q(1, 4), 2), q(1, 6), T, 2);
        const auto fine = separated_set(part, g, WindowSpec::strip(q(1, 4), 2), q(1, 12), T, 2);
        const auto wide = separated_set(part, g, WindowSpec::strip(q(1, 4), 3), q(1, 6), T, 2);
        CHECK(coarse.set_size <= fine.set_size);
        CHECK(coarse.set_size <= wide.set_size);
    }
}

TEST_CASE("windows outside the rotation interval lose every orbit")
{
    const auto part = fixture_partition();
    const auto g = build_graph(part);
    const auto res = separated_set(part, g, WindowSpec::strip(q(3, 4), 1), q(1, 6), 12, 2);
    CHECK(res.set_size == 0);
    CHECK(res.surviving_words.empty());
    CHECK(*res.upper_bound == 0);
}

TEST_CASE("separated set errors")
{
    const auto part = fixture_partition();
    const auto g = build_graph(part);
    const auto window = WindowSpec::strip(q(1, 4), 2);
    CHECK(error_of([&] { separated_set(part, g, window, q(1, 6), 0, 2); }) == ErrorCode::InvalidArgument);
    CHECK(error_of([&] { separated_set(part, g, window, q(1, 6), kHorizonCap + 1, 2); }) == ErrorCode::HorizonCapExceeded);
    CHECK(error_of([&] { separated_set(part, g, window, q(1, 3), 4, 2); }) == ErrorCode::EpsilonTooLarge);
    // The horizon is checked before any row is computed.
    CHECK(error_of([&] { bounds_report(part, g, q(1, 4), 2, 2, 9); }) == ErrorCode::HorizonCapExceeded);
}

TEST_CASE("bounds report rates")
{
    const auto part = fixture_partition();
    const auto g = build_graph(part);
    const auto rows = bounds_report(part, g, q(1, 4), 3, 2, 4);
    REQUIRE(rows.size() == 4);
    const double e3 = finite_r_entropy(g, {q(1, 4), 3}, {200, 400, 800}).extrapolated;
    const double e4 = finite_r_entropy(g, {q(1, 4), 4}, {200, 400, 800}).extrapolated;
    for (const auto& row : rows) {
        CHECK(row.lower <= row.observed);
        CHECK(row.observed <= row.upper);
    }
    const double rate = rows.back().rate;
    CHECK(rate >= e3 - std::log(3.0) / 2 - 0.2);
    CHECK(rate <= e4 + 0.2);

    // Along the weight-0 loop direction growth is slow.
    const auto flat = bounds_report(part, g, q(0), 1, 2, 4);
    for (std::size_t k = 1; k < flat.size(); ++k) CHECK(flat[k].rate < flat[k - 1].rate);
    CHECK(flat.back().rate < 0.25);
}

TEST_CASE("single-layer map: the window never binds")
{
    // Three full branches; refinement splits each into three states.
    const auto part = refine(load_map_file(data_path("zigzag.json")));
    const auto g = build_graph(part);
    CHECK(g.rho() == 0);
    const auto rows = bounds_report(part, g, q(0), 1, 1, 4);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].lower <= rows[k].observed);
        CHECK(rows[k].observed <= rows[k].upper);
        const double step = std::log(static_cast<double>(rows[k].observed) / static_cast<double>(rows[k - 1].observed));
        CHECK(std::abs(step - std::log(3.0)) < 0.2);
    }
}

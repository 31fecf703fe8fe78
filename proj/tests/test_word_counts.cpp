#include "doctest.h"
#include "support.hpp"

#include "rotor/error.hpp"
#include "rotor/word_counts.hpp"

#include <cmath>
#include <random>

using namespace rotor;
using rotor::testing::brute_force_words;
using rotor::testing::brute_weight;
using rotor::testing::fixture_graph;
using rotor::testing::random_graph;

namespace {

Matrix<BigInt> zeros(std::size_t p)
{
    return Matrix<BigInt>(p, p, BigInt(0));
}

Matrix<BigInt> to_big(const BoolMatrix& m)
{
    Matrix<BigInt> out = zeros(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

Matrix<BigInt> count_words(std::size_t p, const std::vector<Word>& words)
{
    Matrix<BigInt> out = zeros(p);
    for (const auto& w : words) out(w.front(), w.back()) += 1;
    return out;
}

// Oracle: brute-force words of length n with weight m.
Matrix<BigInt> oracle_L(const WeightedGraph& g, std::size_t n, long m)
{
    std::vector<Word> keep;
    for (const auto& w : brute_force_words(g, n))
        if (brute_weight(g, w, n) == m) keep.push_back(w);
    return count_words(g.size(), keep);
}

// Oracle: brute-force words of length n in the strip.
Matrix<BigInt> oracle_B(const WeightedGraph& g, std::size_t n, const Rational& alpha, long r)
{
    std::vector<Word> keep;
    for (const auto& w : brute_force_words(g, n)) {
        bool ok = true;
        for (std::size_t j = 1; j < n && ok; ++j) {
            const Rational v(brute_weight(g, w, j + 1));
            const Rational c = alpha * Rational(static_cast<long>(j));
            ok = c - r <= v && v <= c + r;
        }
        if (ok) keep.push_back(w);
    }
    return count_words(g.size(), keep);
}

bool leq(const Matrix<BigInt>& a, const Matrix<BigInt>& b)
{
    for (std::size_t k = 0; k < a.data().size(); ++k)
        if (a.data()[k] > b.data()[k]) return false;
    return true;
}

BigInt total(const Matrix<BigInt>& m)
{
    BigInt s = 0;
    for (const auto& v : m.data()) s += v;
    return s;
}

} // namespace

TEST_CASE("count_L base cases")
{
    const auto g = fixture_graph();
    CHECK(count_L(g, 1, 0).counts == Matrix<BigInt>::identity(3, BigInt(0), BigInt(1)));
    CHECK(count_L(g, 1, 1).counts == zeros(3));
    CHECK(count_L(g, 1, -1).counts == zeros(3));
    CHECK(count_L(g, 2, 1).counts == to_big(g.layer(1)));
    CHECK(count_L(g, 2, 1).total() == 1);
    CHECK(count_L(g, 3, 2).counts == zeros(3));
    CHECK(count_L(g, 3, 1).total() == 5);
    CHECK_THROWS_AS(count_L(g, 0, 0), Error);
}

TEST_CASE("count_B base cases")
{
    const auto g = fixture_graph();
    CHECK(count_B(g, 1, {make_rational(1, 4), 1}).total() == 3);
    CHECK(count_B(g, 20, {make_rational(3, 4), 1}).total() == 0);
    CHECK(count_B(g, 4, {make_rational(1, 2), 1}).counts == oracle_B(g, 4, make_rational(1, 2), 1));
    CHECK_THROWS_AS(count_B(g, 4, {make_rational(1, 2), 0}), Error);
}

TEST_CASE("enumerate_words")
{
    const auto g = fixture_graph();
    CHECK(enumerate_words(g, 1).size() == 3);
    CHECK(enumerate_words(g, 2).size() == 5);
    CHECK(enumerate_words(g, 3, WeightFilter{0}).size() == 4);
    const auto words = enumerate_words(g, 3);
    CHECK(words.size() == 9);
    CHECK(std::is_sorted(words.begin(), words.end()));
    try {
        enumerate_words(g, 21);
        FAIL("expected LengthCapExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LengthCapExceeded);
    }
}

TEST_CASE("word_weight")
{
    const auto g = fixture_graph();
    CHECK(word_weight(g, {2, 0, 2, 0}) == 2);
    CHECK(word_weight(g, {1}) == 0);
    CHECK_THROWS_AS(word_weight(g, {1, 0}), Error);
}

TEST_CASE("dynamic programs agree with brute force on the fixture")
{
    const auto g = fixture_graph();
    for (std::size_t n = 1; n <= 10; ++n) {
        for (long m = -1; m <= static_cast<long>(n); ++m) {
            CHECK(count_L(g, n, m).counts == oracle_L(g, n, m));
            CHECK(count_L_entry(g, n, m, 2, 2) == oracle_L(g, n, m)(2, 2));
        }
        for (const auto& alpha : {make_rational(1, 4), make_rational(1, 2), make_rational(0), make_rational(3, 4)})
            for (long r : {1L, 2L}) CHECK(count_B(g, n, {alpha, r}).counts == oracle_B(g, n, alpha, r));
        Matrix<BigInt> every = zeros(3);
        for (long m = 0; m < static_cast<long>(n); ++m) every = every + oracle_L(g, n, m);
        CHECK(count_words(3, enumerate_words(g, n)) == every);
    }
}

TEST_CASE("dynamic programs agree with brute force on random graphs")
{
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t p = 1 + static_cast<std::size_t>(trial % 4);
        const auto g = random_graph(rng, p, 2, -1);
        const Rational alpha = make_rational(static_cast<long>(trial % 5) - 2, 3);
        for (std::size_t n = 1; n <= 10; ++n) {
            const long lo = static_cast<long>(n - 1) * g.s0();
            const long hi = static_cast<long>(n - 1) * (g.s0() + g.rho());
            for (long m = lo - 1; m <= hi + 1; ++m) CHECK(count_L(g, n, m).counts == oracle_L(g, n, m));
            CHECK(count_B(g, n, {alpha, 1}).counts == oracle_B(g, n, alpha, 1));
            CHECK(count_words(p, enumerate_words(g, n, StripSpec{alpha, 1})) == oracle_B(g, n, alpha, 1));
            CHECK(count_words(p, enumerate_words(g, n, WeightFilter{lo})) == oracle_L(g, n, lo));
        }
        const auto totals = count_B_totals(g, 10, {alpha, 1});
        for (std::size_t n = 1; n <= 10; ++n) CHECK(totals[n - 1] == total(oracle_B(g, n, alpha, 1)));
    }
}

TEST_CASE("weight classes sum to powers of A")
{
    const auto g = fixture_graph();
    const Matrix<BigInt> a = to_big(g.transitions());
    Matrix<BigInt> power = Matrix<BigInt>::identity(3, BigInt(0), BigInt(1));
    for (std::size_t n = 1; n <= 50; ++n) {
        Matrix<BigInt> sum = zeros(3);
        for (const auto& m : count_L_all(g, n)) sum = sum + m;
        CHECK(sum == power);
        power = power * a;
    }
}

TEST_CASE("single entries by the pruned recursion")
{
    const auto g = fixture_graph();
    for (std::size_t n : {15, 40}) {
        const auto all = count_L_all(g, n);
        for (std::size_t m = 0; m < all.size(); ++m)
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    CHECK(count_L_entry(g, n, static_cast<long>(m), i, j) == all[m](i, j));
    }
}

TEST_CASE("shift covariance")
{
    std::mt19937 rng(5);
    const auto g = random_graph(rng, 3, 2);
    const auto moved = g.shifted(2);
    for (std::size_t n = 1; n <= 8; ++n)
        for (long m = 0; m <= 2 * static_cast<long>(n); ++m)
            CHECK(count_L(moved, n, m + 2 * static_cast<long>(n - 1)).counts == count_L(g, n, m).counts);
}

TEST_CASE("composition of word sets through a layer")
{
    // Words x . y glued by an edge of weight 1 from the last letter of x to
    // the first letter of y are counted by M(X) A_1 M(Y).
    const auto g = fixture_graph();
    const auto xs = enumerate_words(g, 2, WeightFilter{0});
    const auto ys = enumerate_words(g, 3, WeightFilter{1});
    std::vector<Word> glued;
    for (const auto& x : xs)
        for (const auto& y : ys)
            if (g.has_edge(x.back(), y.front()) && g.weight(x.back(), y.front()) == 1) {
                Word w = x;
                w.insert(w.end(), y.begin(), y.end());
                glued.push_back(w);
            }
    CHECK(count_words(3, glued) == count_words(3, xs) * to_big(g.layer(1)) * count_words(3, ys));
}

TEST_CASE("strip counts sit between block products and weight classes")
{
    // t = 4, alpha = 1/4: m_j = floor(j t alpha) - floor((j-1) t alpha) = 1.
    const auto g = fixture_graph();
    const Rational alpha = make_rational(1, 4);
    const std::size_t t = 4;
    for (long r : {3L, 4L}) {
        for (std::size_t c = 1; c <= 5; ++c) {
            Matrix<BigInt> lower = Matrix<BigInt>::identity(3, BigInt(0), BigInt(1));
            for (std::size_t j = 1; j < c; ++j) lower = lower * count_L(g, t + 1, 1).counts;
            lower = lower * count_L(g, t, 1).counts;

            const std::size_t n = c * t;
            const long centre = floor(alpha * Rational(static_cast<long>(n - 1))).get_si();
            Matrix<BigInt> upper = zeros(3);
            for (long m = centre - r; m <= centre + r; ++m) upper = upper + count_L(g, n, m).counts;

            const auto b = count_B(g, n, {alpha, r}).counts;
            CHECK(leq(lower, b));
            CHECK(leq(b, upper));
        }
    }
}

TEST_CASE("finite-r entropy estimates")
{
    const auto g = fixture_graph();
    const auto outside = finite_r_entropy(g, {make_rational(3, 4), 2}, {10, 20, 40});
    CHECK(outside.counts_vanish);
    CHECK(outside.extrapolated == 0.0);

    // Single layer: the strip never binds and the rate is ln 2.
    const WeightedGraph full(2, {{0, 0, 3}, {0, 1, 3}, {1, 0, 3}, {1, 1, 3}});
    const auto flat = finite_r_entropy(full, {make_rational(3), 1}, {50, 100, 200});
    CHECK(flat.extrapolated == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(flat.band == doctest::Approx(0.0).epsilon(1e-12));

    const auto est = finite_r_entropy(g, {make_rational(1, 4), 3}, {100, 200, 400});
    CHECK(est.samples.size() == 3);
    CHECK(est.samples[2].count > est.samples[1].count);
    CHECK(est.extrapolated > 0.5);
    CHECK(est.extrapolated < 0.61);

    CHECK_THROWS_AS(finite_r_entropy(g, {make_rational(1, 4), 3}, {}), Error);
    CHECK_THROWS_AS(finite_r_entropy(g, {make_rational(1, 4), 3}, {10, 10}), Error);
    CHECK_THROWS_AS(finite_r_entropy(g, {make_rational(1, 4), 3}, {5001}), Error);
}

TEST_CASE("strip counts vanish outside the rotation interval")
{
    const auto g = fixture_graph();
    // The word 2,0,2,0,... has prefix weights 1,1,2,2,3,... and meets the lower
    // edge 3j/4 - 2 for the last time at j = 9, so the strip empties at n = 11.
    const auto totals = count_B_totals(g, 60, {make_rational(3, 4), 2});
    CHECK(totals[9] == total(oracle_B(g, 10, make_rational(3, 4), 2)));
    CHECK(totals[9] > 0);
    for (std::size_t n = 11; n <= 60; ++n) CHECK(totals[n - 1] == 0);
}

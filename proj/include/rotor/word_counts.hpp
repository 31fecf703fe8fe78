#pragma once

// Exact counts of admissible weighted words.
//
// A word w = w_0 ... w_{n-1} has length n and weight v(w), the sum of the
// n - 1 edge weights along it. M(D)_ij counts words of D from i to j.

#include "rotor/circle_map.hpp"
#include "rotor/matrix.hpp"
#include "rotor/rational.hpp"
#include "rotor/symbolic_graph.hpp"

#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

namespace rotor {

/// Prefix constraint alpha*j - r <= v(w[:j]) <= alpha*j + r for 1 <= j <= n-1,
/// with alpha in true (unshifted) weight units.
struct StripSpec {
    Rational alpha;
    long r = 1;

    bool admits(std::size_t j, long weight) const;
};

struct CountMatrix {
    Matrix<BigInt> counts;
    std::size_t n = 0;
    std::variant<long, StripSpec> label; ///< weight m, or the strip

    BigInt total() const;
};

/// M(L^n_m) via M(L^{n+1}_m) = sum_s M(L^n_{m-s}) A_s.
CountMatrix count_L(const WeightedGraph& graph, std::size_t n, long m);

/// M(L^n_m) for every m in [(n-1)s0, (n-1)(s0+rho)], indexed by m - (n-1)s0.
std::vector<Matrix<BigInt>> count_L_all(const WeightedGraph& graph, std::size_t n);

/// Single entry M(L^n_m)_ij by a row-vector recursion pruned to weights that
/// can still reach m. Suited to large n.
BigInt count_L_entry(const WeightedGraph& graph, std::size_t n, long m, std::size_t i, std::size_t j);

/// M(B_{n,alpha,r}).
CountMatrix count_B(const WeightedGraph& graph, std::size_t n, const StripSpec& strip);

/// |B_{k,alpha,r}| for k = 1..n_max (index k - 1); the strip condition is
/// prefix-closed so one pass yields every length.
std::vector<BigInt> count_B_totals(const WeightedGraph& graph, std::size_t n_max, const StripSpec& strip);

struct NoFilter {};
struct WeightFilter {
    long m;
};
using WordFilter = std::variant<NoFilter, WeightFilter, StripSpec>;

inline constexpr std::size_t kEnumerationCap = 20;

/// Exhaustive depth-first enumeration, in lexicographic order.
/// Throws LengthCapExceeded for n > 20.
std::vector<Word> enumerate_words(const WeightedGraph& graph, std::size_t n, const WordFilter& filter = NoFilter{});

/// v(w); the word must be admissible.
long word_weight(const WeightedGraph& graph, const Word& word);

struct GrowthSample {
    std::size_t n;
    BigInt count;
    double rate; ///< ln|B_n| / n, or 0 when the count is zero
};

struct GrowthEstimate {
    std::vector<GrowthSample> samples;
    /// ln(|B_{n_k}| / |B_{n_{k-1}}|) / (n_k - n_{k-1}) over the last two lengths.
    double extrapolated = 0.0;
    /// |extrapolated - previous pairwise estimate| (or - last rate).
    double band = 0.0;
    bool non_monotone = false;
    /// |B_n| reached zero by the largest length (the direction lies outside
    /// the rotation interval); the estimate is then reported as 0.
    bool counts_vanish = false;
};

inline constexpr std::size_t kGrowthLengthCap = 5000;

/// e_{alpha,r} estimate from |B_{n,alpha,r}| on an increasing grid of lengths.
GrowthEstimate finite_r_entropy(const WeightedGraph& graph, const StripSpec& strip, const std::vector<std::size_t>& n_grid);

} // namespace rotor

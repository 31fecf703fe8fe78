#pragma once

// Separated sets of orbits confined to a space-time window, built by exact
// rational orbit iteration, and the word-count bounds that bracket them.

#include "rotor/circle_map.hpp"
#include "rotor/rational.hpp"
#include "rotor/symbolic_graph.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace rotor {

/// W = {(y, n) : l1 + n alpha <= y <= l2 + n alpha}, alpha = cot(theta).
struct WindowSpec {
    Rational l1;
    Rational l2;
    Rational alpha;

    static WindowSpec strip(const Rational& alpha, long r) { return {Rational(-r), Rational(r), alpha}; }
    double theta() const;
    bool contains(const Rational& y, std::size_t n) const;
    /// r when the window is [-r, r] for a positive integer r.
    std::optional<long> half_width() const;
};

/// Minimal length of a nonempty cylinder of a word of length m.
Rational epsilon_m(const MarkovPartition& partition, const WeightedGraph& graph, std::size_t m);

/// Exact check of l1 + n alpha <= F^n x <= l2 + n alpha for 0 <= n <= T.
bool orbit_in_window(const CircleMapSpec& spec, const Rational& x, const WindowSpec& window, std::size_t T);

/// True when some 0 <= n < size has |a_n - b_n| >= eps.
bool orbits_separated(const std::vector<Rational>& a, const std::vector<Rational>& b, const Rational& eps);

struct SeparationResult {
    std::size_t T = 0; ///< orbit points F^0 x, ..., F^{T-1} x
    Rational epsilon;
    std::size_t set_size = 0;
    std::vector<Rational> points; ///< ascending
    /// Words of length T whose closed cylinder keeps an orbit in the window.
    std::vector<Word> surviving_words;
    std::size_t candidates = 0;
    /// floor(1/eps) |B_{T,alpha,r+1}|, for windows [-r, r].
    std::optional<BigInt> upper_bound;
    /// ceil(|B_{km,alpha,r}| / 3^k) with T = km, for windows [-r, r].
    std::optional<BigInt> lower_bound;
};

inline constexpr std::size_t kHorizonCap = 16;

/// Greedy (eps, W, T)-separated set. Candidates are, inside each surviving
/// cylinder, the points whose F^{T-1} image lies on an eps-grid started at
/// the image's left end, plus the far end; they are accepted in ascending
/// order when separated from every point already chosen.
/// Throws HorizonCapExceeded for T > 16 and EpsilonTooLarge for
/// eps > epsilon_m(block_m).
SeparationResult separated_set(const MarkovPartition& partition, const WeightedGraph& graph, const WindowSpec& window,
                               const Rational& epsilon, std::size_t T, std::size_t block_m);

struct BoundsRow {
    std::size_t T = 0;
    BigInt lower;
    std::size_t observed = 0;
    BigInt upper;
    double rate = 0.0; ///< ln(observed) / T
};

/// Separated sets for T = m, 2m, ..., km in the window [-r, r] of slope alpha.
/// eps defaults to epsilon_m(m).
std::vector<BoundsRow> bounds_report(const MarkovPartition& partition, const WeightedGraph& graph, const Rational& alpha,
                                     long r, std::size_t m, std::size_t k, std::optional<Rational> epsilon = std::nullopt);

} // namespace rotor

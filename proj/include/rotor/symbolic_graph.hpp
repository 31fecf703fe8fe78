#pragma once

#include "rotor/circle_map.hpp"
#include "rotor/matrix.hpp"
#include "rotor/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rotor {

struct Edge {
    int from;
    int to;
    long weight;
};

/// Weighted transition graph Gamma_A. Edge (i, j) exists iff
/// F(xi_i) ⊇ xi_j + k_ij; layers[s] holds the edges of weight s0 + s.
class WeightedGraph {
public:
    /// Builds from an explicit edge list; weights must cover a contiguous range.
    WeightedGraph(std::size_t states, std::vector<Edge> edges);

    std::size_t size() const noexcept { return p_; }
    long s0() const noexcept { return s0_; }
    long rho() const noexcept { return rho_; }

    const BoolMatrix& transitions() const noexcept { return a_; }
    bool has_edge(std::size_t i, std::size_t j) const { return a_(i, j) != 0; }
    /// k_ij; only meaningful where has_edge(i, j).
    long weight(std::size_t i, std::size_t j) const { return k_(i, j); }
    /// Layer A_{s0 + shifted}, shifted in [0, rho].
    const BoolMatrix& layer(std::size_t shifted) const { return layers_.at(shifted); }
    const std::vector<BoolMatrix>& layers() const noexcept { return layers_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// Same transitions with every weight shifted by c.
    WeightedGraph shifted(long c) const;

    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b)
    {
        return a.a_ == b.a_ && a.k_ == b.k_ && a.s0_ == b.s0_ && a.rho_ == b.rho_;
    }

private:
    std::size_t p_;
    BoolMatrix a_;
    Matrix<long> k_;
    long s0_ = 0;
    long rho_ = 0;
    std::vector<BoolMatrix> layers_;
    std::vector<Edge> edges_;
};

/// Extracts A, K and the layers from a refined partition.
/// Throws NonContiguousWeights if the weight set has a gap.
WeightedGraph build_graph(const MarkovPartition& partition);

struct RotationInterval {
    Rational lo;
    Rational hi;
};

/// Minimum and maximum cycle mean of the weights (Karp), exact.
/// Throws NoCycle for acyclic graphs.
RotationInterval rotation_interval(const WeightedGraph& graph);

/// Minimum cycle mean of an arbitrary weighted digraph.
std::optional<Rational> min_cycle_mean(std::size_t states, const std::vector<Edge>& edges);

struct StructureReport {
    bool primitive = false;
    /// Smallest k with A^k > 0 entrywise, when primitive.
    std::optional<std::size_t> primitivity_exponent;

    bool rank_condition = false;
    /// True when decided by the row-support argument; otherwise the answer
    /// comes from sampling phi and is only a heuristic.
    bool rank_structural = false;
    std::size_t rank_samples = 0;
    /// Smallest over sampled phi of the largest |2x2 minor| of A(1, e^{i phi}).
    double min_sampled_minor = 0.0;

    std::string summary() const;
};

inline constexpr std::size_t kRankSamples = 1024;

StructureReport structure_checks(const WeightedGraph& graph);

/// Smallest k <= (p-1)^2 + 1 with A^k strictly positive, if any.
std::optional<std::size_t> primitivity_exponent(const BoolMatrix& support);

} // namespace rotor

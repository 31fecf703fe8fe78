#include "rotor/symbolic_graph.hpp"

#include "rotor/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

namespace rotor {

WeightedGraph::WeightedGraph(std::size_t states, std::vector<Edge> edges)
    : p_(states), a_(states, states, 0), k_(states, states, 0), edges_(std::move(edges))
{
    if (states == 0) throw Error(ErrorCode::InvalidArgument, "graph with no states");
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& x, const Edge& y) { return std::tie(x.from, x.to) < std::tie(y.from, y.to); });

    std::set<long> weights;
    for (const auto& e : edges_) {
        if (e.from < 0 || e.to < 0 || static_cast<std::size_t>(e.from) >= p_ || static_cast<std::size_t>(e.to) >= p_)
            throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
        if (a_(e.from, e.to)) throw Error(ErrorCode::InvalidArgument, "duplicate edge");
        a_(e.from, e.to) = 1;
        k_(e.from, e.to) = e.weight;
        weights.insert(e.weight);
    }
    if (!weights.empty()) {
        s0_ = *weights.begin();
        rho_ = *weights.rbegin() - s0_;
        if (static_cast<long>(weights.size()) != rho_ + 1) {
            std::ostringstream os;
            os << "weights {";
            for (long w : weights) os << ' ' << w;
            os << " } are not a contiguous range";
            throw Error(ErrorCode::NonContiguousWeights, os.str());
        }
    }
    layers_.assign(static_cast<std::size_t>(rho_ + 1), BoolMatrix(p_, p_, 0));
    for (const auto& e : edges_) layers_[static_cast<std::size_t>(e.weight - s0_)](e.from, e.to) = 1;
}

WeightedGraph WeightedGraph::shifted(long c) const
{
    std::vector<Edge> moved = edges_;
    for (auto& e : moved) e.weight += c;
    return WeightedGraph(p_, std::move(moved));
}

WeightedGraph build_graph(const MarkovPartition& partition)
{
    const std::size_t p = partition.size();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            if (auto s = partition.shift(i, j))
                edges.push_back({static_cast<int>(i), static_cast<int>(j), *s});
        }
    }
    return WeightedGraph(p, std::move(edges));
}

std::optional<Rational> min_cycle_mean(std::size_t n, const std::vector<Edge>& edges)
{
    // Karp with an implicit zero-weight super-source: D[k][v] is the minimum
    // weight of a k-edge walk ending at v and starting anywhere.
    constexpr long kInf = std::numeric_limits<long>::max();
    std::vector<std::vector<long>> dist(n + 1, std::vector<long>(n, kInf));
    std::fill(dist[0].begin(), dist[0].end(), 0);
    for (std::size_t k = 1; k <= n; ++k) {
        for (const auto& e : edges) {
            const long prev = dist[k - 1][e.from];
            if (prev == kInf) continue;
            dist[k][e.to] = std::min(dist[k][e.to], prev + e.weight);
        }
    }

    std::optional<Rational> best;
    for (std::size_t v = 0; v < n; ++v) {
        if (dist[n][v] == kInf) continue;
        std::optional<Rational> worst;
        for (std::size_t k = 0; k < n; ++k) {
            if (dist[k][v] == kInf) continue;
            Rational mean(dist[n][v] - dist[k][v], static_cast<long>(n - k));
            mean.canonicalize();
            if (!worst || mean > *worst) worst = mean;
        }
        if (worst && (!best || *worst < *best)) best = worst;
    }
    return best;
}

RotationInterval rotation_interval(const WeightedGraph& graph)
{
    const auto lo = min_cycle_mean(graph.size(), graph.edges());
    if (!lo) throw Error(ErrorCode::NoCycle, "transition graph is acyclic");
    std::vector<Edge> negated = graph.edges();
    for (auto& e : negated) e.weight = -e.weight;
    const auto neg_hi = min_cycle_mean(graph.size(), negated);
    return {*lo, Rational(-*neg_hi)};
}

std::optional<std::size_t> primitivity_exponent(const BoolMatrix& support)
{
    const std::size_t p = support.rows();
    const std::size_t cap = (p - 1) * (p - 1) + 1;
    BoolMatrix power = support;
    for (std::size_t k = 1; k <= cap; ++k) {
        bool positive = std::all_of(power.data().begin(), power.data().end(), [](int v) { return v != 0; });
        if (positive) return k;
        BoolMatrix next(p, p, 0);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t m = 0; m < p; ++m)
                if (power(i, m))
                    for (std::size_t j = 0; j < p; ++j)
                        if (support(m, j)) next(i, j) = 1;
        power = std::move(next);
    }
    return std::nullopt;
}

StructureReport structure_checks(const WeightedGraph& graph)
{
    StructureReport report;
    const std::size_t p = graph.size();
    report.primitivity_exponent = primitivity_exponent(graph.transitions());
    report.primitive = report.primitivity_exponent.has_value();

    // Rank-one matrices have proportional nonzero rows, hence equal supports.
    const auto& a = graph.transitions();
    std::vector<std::vector<int>> supports;
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<int> row(a.data().begin() + static_cast<std::ptrdiff_t>(i * p),
                             a.data().begin() + static_cast<std::ptrdiff_t>((i + 1) * p));
        if (std::any_of(row.begin(), row.end(), [](int v) { return v != 0; })) supports.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < supports.size() && !report.rank_structural; ++i)
        for (std::size_t j = i + 1; j < supports.size(); ++j)
            if (supports[i] != supports[j]) {
                report.rank_structural = true;
                break;
            }
    if (report.rank_structural) {
        report.rank_condition = true;
        return report;
    }

    // Heuristic: sample phi and look for a nonzero 2x2 minor.
    report.rank_samples = kRankSamples;
    report.min_sampled_minor = std::numeric_limits<double>::infinity();
    using cd = std::complex<double>;
    for (std::size_t t = 0; t < kRankSamples; ++t) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(kRankSamples);
        std::vector<cd> m(p * p, cd(0.0));
        for (const auto& e : graph.edges())
            m[static_cast<std::size_t>(e.from) * p + static_cast<std::size_t>(e.to)] =
                std::polar(1.0, phi * static_cast<double>(e.weight - graph.s0()));
        double largest = 0.0;
        for (std::size_t i1 = 0; i1 < p; ++i1)
            for (std::size_t i2 = i1 + 1; i2 < p; ++i2)
                for (std::size_t j1 = 0; j1 < p; ++j1)
                    for (std::size_t j2 = j1 + 1; j2 < p; ++j2) {
                        const cd minor = m[i1 * p + j1] * m[i2 * p + j2] - m[i1 * p + j2] * m[i2 * p + j1];
                        largest = std::max(largest, std::abs(minor));
                    }
        report.min_sampled_minor = std::min(report.min_sampled_minor, largest);
    }
    report.rank_condition = report.min_sampled_minor > 1e-9;
    return report;
}

std::string StructureReport::summary() const
{
    std::ostringstream os;
    os << "primitive: " << (primitive ? "true" : "false");
    if (primitivity_exponent) os << " (A^" << *primitivity_exponent << " > 0)";
    os << "\nrank_condition: " << (rank_condition ? "true" : "false");
    if (rank_structural) os << " (structural: distinct row supports)";
    else
        os << " (heuristic: " << rank_samples << " sampled phi, min largest 2x2 minor " << min_sampled_minor << ")";
    os << '\n';
    return os.str();
}

} // namespace rotor

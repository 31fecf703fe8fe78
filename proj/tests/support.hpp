#pragma once

#include "rotor/circle_map.hpp"
#include "rotor/symbolic_graph.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace rotor::testing {

inline std::filesystem::path data_path(const std::string& name)
{
    return std::filesystem::path(ROTOR_DATA_DIR) / name;
}

inline CircleMapSpec fixture_spec()
{
    return load_map_file(data_path("three_piece.json"));
}

inline MarkovPartition fixture_partition()
{
    return refine(fixture_spec());
}

inline WeightedGraph fixture_graph()
{
    return build_graph(fixture_partition());
}

inline CircleMapSpec make_spec(std::vector<std::string> d, std::vector<std::string> f)
{
    CircleMapSpec spec;
    for (const auto& s : d) spec.breakpoints.push_back(parse_rational(s));
    for (const auto& s : f) spec.lift_values.push_back(parse_rational(s));
    return spec;
}

/// Random graph on p states with edge density ~0.6 and weights drawn from
/// [base, base + span], relabelled to a contiguous range.
inline WeightedGraph random_graph(std::mt19937& rng, std::size_t p, long span, long base = 0)
{
    std::bernoulli_distribution edge(0.6);
    std::uniform_int_distribution<long> weight(0, span);
    for (;;) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j)
                if (edge(rng)) edges.push_back({static_cast<int>(i), static_cast<int>(j), weight(rng)});
        if (edges.empty()) continue;
        std::set<long> used;
        for (const auto& e : edges) used.insert(e.weight);
        std::map<long, long> rank;
        for (long w : used) rank.emplace(w, base + static_cast<long>(rank.size()));
        for (auto& e : edges) e.weight = rank.at(e.weight);
        return WeightedGraph(p, std::move(edges));
    }
}

inline WeightedGraph random_primitive_graph(std::mt19937& rng, std::size_t p, long span, long base = 0)
{
    for (;;) {
        WeightedGraph g = random_graph(rng, p, span, base);
        if (primitivity_exponent(g.transitions())) return g;
    }
}

/// All admissible words of length n, by brute force over every sequence.
inline std::vector<Word> brute_force_words(const WeightedGraph& g, std::size_t n)
{
    std::vector<Word> out;
    Word w(n, 0);
    const auto p = static_cast<int>(g.size());
    for (;;) {
        bool ok = true;
        for (std::size_t k = 1; k < n && ok; ++k) ok = g.has_edge(w[k - 1], w[k]);
        if (ok) out.push_back(w);
        std::size_t pos = n;
        while (pos > 0 && ++w[pos - 1] == p) w[--pos] = 0;
        if (pos == 0) return out;
    }
}

inline long brute_weight(const WeightedGraph& g, const Word& w, std::size_t upto)
{
    long v = 0;
    for (std::size_t k = 1; k < upto; ++k) v += g.weight(w[k - 1], w[k]);
    return v;
}

/// Minimal solution (x0, y0) for the fixture from its closed forms, valid for
/// 0 < alpha < 1/2.
inline std::pair<double, double> fixture_closed_form(double alpha)
{
    const double x = (alpha - std::sqrt(5 * alpha * alpha - 4 * alpha + 1)) / (2 * alpha - 1);
    return {x, (1 - x) / (x * x * x + x * x)};
}

} // namespace rotor::testing

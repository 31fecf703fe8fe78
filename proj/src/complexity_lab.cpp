#include "rotor/complexity_lab.hpp"

#include "rotor/error.hpp"
#include "rotor/word_counts.hpp"

#include <algorithm>
#include <cmath>

namespace rotor {

double WindowSpec::theta() const
{
    return std::atan2(1.0, alpha.get_d());
}

bool WindowSpec::contains(const Rational& y, std::size_t n) const
{
    const Rational drift = alpha * Rational(static_cast<long>(n));
    return l1 + drift <= y && y <= l2 + drift;
}

std::optional<long> WindowSpec::half_width() const
{
    if (l2.get_den() != 1 || l1 != -l2 || l2 <= 0 || !l2.get_num().fits_slong_p()) return std::nullopt;
    return l2.get_num().get_si();
}

Rational epsilon_m(const MarkovPartition& partition, const WeightedGraph& graph, std::size_t m)
{
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "depth m must be at least 1");
    std::optional<Rational> best;
    for (const auto& word : enumerate_words(graph, m)) {
        const Rational len = cylinder(partition, word).interval.length();
        if (len > 0 && (!best || len < *best)) best = len;
    }
    if (!best) throw Error(ErrorCode::InvalidArgument, "no nonempty cylinder of length " + std::to_string(m));
    return *best;
}

bool orbit_in_window(const CircleMapSpec& spec, const Rational& x, const WindowSpec& window, std::size_t T)
{
    const auto orbit = lift_iterate(spec, x, T);
    for (std::size_t n = 0; n <= T; ++n)
        if (!window.contains(orbit[n], n)) return false;
    return true;
}

bool orbits_separated(const std::vector<Rational>& a, const std::vector<Rational>& b, const Rational& eps)
{
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k)
        if (abs(a[k] - b[k]) >= eps) return true;
    return false;
}

namespace {

// Closed x-interval J on which F^n is the affine map x -> slope x + intercept
// and F^n x lies in closure(xi_state) + offset.
struct Branch {
    Rational lo;
    Rational hi;
    Rational slope;
    Rational intercept;
    BigInt offset;
};

struct Explorer {
    const MarkovPartition& partition;
    const WeightedGraph& graph;
    const WindowSpec& window;
    const Rational& eps;
    std::size_t T;

    std::vector<Word> surviving;
    std::vector<Rational> candidates;
    Word word;

    void leaf(const Branch& b)
    {
        surviving.push_back(word);
        Rational u = b.slope * b.lo + b.intercept;
        Rational v = b.slope * b.hi + b.intercept;
        if (v < u) std::swap(u, v);
        auto add = [&](const Rational& y) {
            Rational x = (y - b.intercept) / b.slope;
            if (x < 1) candidates.push_back(std::move(x));
        };
        for (Rational y = u; y < v; y += eps) add(y);
        add(v);
    }

    void visit(const Branch& b, std::size_t n)
    {
        if (n + 1 == T) {
            leaf(b);
            return;
        }
        const auto& d = partition.breakpoints();
        const auto& F = partition.as_spec().lift_values;
        const auto i = static_cast<std::size_t>(word.back());
        const Rational& a = partition.slopes()[i];
        // F(y) = a (y - offset - d_i) + F(d_i) + offset on closure(xi_i) + offset.
        Branch base;
        base.slope = a * b.slope;
        base.intercept = a * (b.intercept - b.offset - d[i]) + F[i] + b.offset;
        const Rational drift = window.alpha * Rational(static_cast<long>(n + 1));
        for (std::size_t j = 0; j < graph.size(); ++j) {
            if (!graph.has_edge(i, j)) continue;
            Branch next = base;
            next.offset = b.offset + graph.weight(i, j);
            const Rational shift(next.offset);
            const Rational ylo = std::max(Rational(d[j] + shift), Rational(window.l1 + drift));
            const Rational yhi = std::min(Rational(d[j + 1] + shift), Rational(window.l2 + drift));
            if (yhi < ylo) continue;
            Rational x1 = (ylo - next.intercept) / next.slope;
            Rational x2 = (yhi - next.intercept) / next.slope;
            if (x2 < x1) std::swap(x1, x2);
            next.lo = std::max(x1, b.lo);
            next.hi = std::min(x2, b.hi);
            if (next.hi < next.lo) continue;
            word.push_back(static_cast<int>(j));
            visit(next, n + 1);
            word.pop_back();
        }
    }
};

} // namespace

SeparationResult separated_set(const MarkovPartition& partition, const WeightedGraph& graph, const WindowSpec& window,
                               const Rational& epsilon, std::size_t T, std::size_t block_m)
{
    if (T == 0) throw Error(ErrorCode::InvalidArgument, "horizon T must be at least 1");
    if (T > kHorizonCap)
        throw Error(ErrorCode::HorizonCapExceeded, "T = " + std::to_string(T) + " exceeds " + std::to_string(kHorizonCap));
    if (epsilon <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    if (!(window.l1 < window.l2)) throw Error(ErrorCode::InvalidArgument, "window needs l1 < l2");
    const Rational eps_m = epsilon_m(partition, graph, block_m);
    if (epsilon > eps_m)
        throw Error(ErrorCode::EpsilonTooLarge, "epsilon " + to_string(epsilon) + " exceeds epsilon_m = " + to_string(eps_m));

    Explorer ex{partition, graph, window, epsilon, T, {}, {}, {}};
    const auto& d = partition.breakpoints();
    for (std::size_t i = 0; i < partition.size(); ++i) {
        Branch b{std::max(d[i], window.l1), std::min(d[i + 1], window.l2), Rational(1), Rational(0), BigInt(0)};
        if (b.hi < b.lo) continue;
        ex.word.assign(1, static_cast<int>(i));
        ex.visit(b, 0);
    }

    auto& cand = ex.candidates;
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    SeparationResult out;
    out.T = T;
    out.epsilon = epsilon;
    out.candidates = cand.size();
    out.surviving_words = std::move(ex.surviving);
    std::vector<std::vector<Rational>> chosen;
    for (const auto& x : cand) {
        auto orbit = lift_iterate(partition.as_spec(), x, T - 1);
        const bool separated = std::all_of(chosen.begin(), chosen.end(),
                                           [&](const auto& other) { return orbits_separated(orbit, other, epsilon); });
        if (!separated) continue;
        chosen.push_back(std::move(orbit));
        out.points.push_back(x);
    }
    out.set_size = out.points.size();

    if (const auto r = window.half_width()) {
        const BigInt grid = floor(Rational(1) / epsilon);
        out.upper_bound = grid * count_B_totals(graph, T, {window.alpha, *r + 1})[T - 1];
        if (T % block_m == 0) {
            BigInt scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 3, T / block_m);
            out.lower_bound = ceil(Rational(count_B_totals(graph, T, {window.alpha, *r})[T - 1], scale));
        }
    }
    return out;
}

std::vector<BoundsRow> bounds_report(const MarkovPartition& partition, const WeightedGraph& graph, const Rational& alpha,
                                     long r, std::size_t m, std::size_t k, std::optional<Rational> epsilon)
{
    if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be at least 1");
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    if (m * k > kHorizonCap)
        throw Error(ErrorCode::HorizonCapExceeded, "T = " + std::to_string(m * k) + " exceeds " + std::to_string(kHorizonCap));
    const Rational eps = epsilon ? *epsilon : epsilon_m(partition, graph, m);
    const WindowSpec window = WindowSpec::strip(alpha, r);
    std::vector<BoundsRow> rows;
    for (std::size_t j = 1; j <= k; ++j) {
        const auto res = separated_set(partition, graph, window, eps, j * m, m);
        BoundsRow row;
        row.T = j * m;
        row.lower = *res.lower_bound;
        row.observed = res.set_size;
        row.upper = *res.upper_bound;
        row.rate = res.set_size > 0 ? std::log(static_cast<double>(res.set_size)) / static_cast<double>(row.T) : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace rotor

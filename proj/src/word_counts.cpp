#include "rotor/word_counts.hpp"

#include "rotor/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace rotor {

namespace {

void require_length(std::size_t n)
{
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "word length must be at least 1");
}

Matrix<BigInt> zero_matrix(std::size_t p)
{
    return Matrix<BigInt>(p, p, BigInt(0));
}

// Appends one edge of every layer to each matrix in `table`:
// out[w + s] += table[w] * A_{s0+s}.
std::map<long, Matrix<BigInt>> step_matrices(const WeightedGraph& graph, const std::map<long, Matrix<BigInt>>& table)
{
    const std::size_t p = graph.size();
    std::map<long, Matrix<BigInt>> out;
    for (const auto& [w, m] : table) {
        for (const auto& e : graph.edges()) {
            const long target = w + (e.weight - graph.s0());
            auto it = out.find(target);
            if (it == out.end()) it = out.emplace(target, zero_matrix(p)).first;
            for (std::size_t i = 0; i < p; ++i) it->second(i, e.to) += m(i, e.from);
        }
    }
    return out;
}

} // namespace

bool StripSpec::admits(std::size_t j, long weight) const
{
    const Rational centre = alpha * Rational(static_cast<long>(j));
    const Rational w(weight);
    return centre - r <= w && w <= centre + r;
}

BigInt CountMatrix::total() const
{
    BigInt sum = 0;
    for (const auto& v : counts.data()) sum += v;
    return sum;
}

std::vector<Matrix<BigInt>> count_L_all(const WeightedGraph& graph, std::size_t n)
{
    require_length(n);
    const std::size_t p = graph.size();
    const auto rho = static_cast<std::size_t>(graph.rho());
    std::vector<Matrix<BigInt>> table{Matrix<BigInt>::identity(p, BigInt(0), BigInt(1))};
    for (std::size_t step = 1; step < n; ++step) {
        std::vector<Matrix<BigInt>> next(table.size() + rho, zero_matrix(p));
        for (std::size_t w = 0; w < table.size(); ++w) {
            for (const auto& e : graph.edges()) {
                auto& target = next[w + static_cast<std::size_t>(e.weight - graph.s0())];
                for (std::size_t i = 0; i < p; ++i) target(i, e.to) += table[w](i, e.from);
            }
        }
        table = std::move(next);
    }
    return table;
}

CountMatrix count_L(const WeightedGraph& graph, std::size_t n, long m)
{
    require_length(n);
    CountMatrix out{zero_matrix(graph.size()), n, m};
    const long shifted = m - static_cast<long>(n - 1) * graph.s0();
    if (shifted < 0 || shifted > static_cast<long>(n - 1) * graph.rho()) return out;
    out.counts = std::move(count_L_all(graph, n)[static_cast<std::size_t>(shifted)]);
    return out;
}

BigInt count_L_entry(const WeightedGraph& graph, std::size_t n, long m, std::size_t i, std::size_t j)
{
    require_length(n);
    const std::size_t p = graph.size();
    const long steps = static_cast<long>(n - 1);
    const long target = m - steps * graph.s0();
    const long rho = graph.rho();
    if (target < 0 || target > steps * rho) return 0;

    // row[w - lo] is the vector of counts by end state for shifted weight w.
    long lo = 0;
    std::vector<std::vector<BigInt>> row(1, std::vector<BigInt>(p, BigInt(0)));
    row[0][i] = 1;
    for (long k = 1; k <= steps; ++k) {
        const long remaining = steps - k;
        const long new_lo = std::max(0L, target - remaining * rho);
        const long new_hi = std::min(k * rho, target);
        if (new_hi < new_lo) return 0;
        std::vector<std::vector<BigInt>> next(static_cast<std::size_t>(new_hi - new_lo + 1),
                                              std::vector<BigInt>(p, BigInt(0)));
        for (std::size_t idx = 0; idx < row.size(); ++idx) {
            const long w = lo + static_cast<long>(idx);
            for (const auto& e : graph.edges()) {
                const BigInt& c = row[idx][static_cast<std::size_t>(e.from)];
                if (c == 0) continue;
                const long t = w + (e.weight - graph.s0());
                if (t < new_lo || t > new_hi) continue;
                next[static_cast<std::size_t>(t - new_lo)][static_cast<std::size_t>(e.to)] += c;
            }
        }
        row = std::move(next);
        lo = new_lo;
    }
    return row[static_cast<std::size_t>(target - lo)][j];
}

CountMatrix count_B(const WeightedGraph& graph, std::size_t n, const StripSpec& strip)
{
    require_length(n);
    if (strip.r < 1) throw Error(ErrorCode::InvalidArgument, "strip half-width r must be >= 1");
    const std::size_t p = graph.size();
    std::map<long, Matrix<BigInt>> table;
    table.emplace(0, Matrix<BigInt>::identity(p, BigInt(0), BigInt(1)));
    for (std::size_t j = 1; j < n && !table.empty(); ++j) {
        auto next = step_matrices(graph, table);
        std::erase_if(next, [&](const auto& kv) {
            return !strip.admits(j, kv.first + static_cast<long>(j) * graph.s0());
        });
        table = std::move(next);
    }
    CountMatrix out{zero_matrix(p), n, strip};
    for (const auto& [w, m] : table) out.counts = out.counts + m;
    return out;
}

std::vector<BigInt> count_B_totals(const WeightedGraph& graph, std::size_t n_max, const StripSpec& strip)
{
    require_length(n_max);
    if (strip.r < 1) throw Error(ErrorCode::InvalidArgument, "strip half-width r must be >= 1");
    const std::size_t p = graph.size();
    std::vector<BigInt> totals;
    totals.reserve(n_max);
    totals.emplace_back(static_cast<long>(p));

    // Shifted weight -> counts by end state, summed over start states.
    std::map<long, std::vector<BigInt>> table;
    table.emplace(0, std::vector<BigInt>(p, BigInt(1)));
    for (std::size_t j = 1; j < n_max; ++j) {
        std::map<long, std::vector<BigInt>> next;
        for (const auto& [w, v] : table) {
            for (const auto& e : graph.edges()) {
                const BigInt& c = v[static_cast<std::size_t>(e.from)];
                if (c == 0) continue;
                const long t = w + (e.weight - graph.s0());
                if (!strip.admits(j, t + static_cast<long>(j) * graph.s0())) continue;
                auto it = next.find(t);
                if (it == next.end()) it = next.emplace(t, std::vector<BigInt>(p, BigInt(0))).first;
                it->second[static_cast<std::size_t>(e.to)] += c;
            }
        }
        table = std::move(next);
        BigInt sum = 0;
        for (const auto& [w, v] : table)
            for (const auto& c : v) sum += c;
        totals.push_back(std::move(sum));
    }
    return totals;
}

long word_weight(const WeightedGraph& graph, const Word& word)
{
    long v = 0;
    for (std::size_t k = 1; k < word.size(); ++k) {
        const auto a = static_cast<std::size_t>(word[k - 1]);
        const auto b = static_cast<std::size_t>(word[k]);
        if (!graph.has_edge(a, b)) throw Error(ErrorCode::InvalidArgument, "word is not admissible");
        v += graph.weight(a, b);
    }
    return v;
}

std::vector<Word> enumerate_words(const WeightedGraph& graph, std::size_t n, const WordFilter& filter)
{
    require_length(n);
    if (n > kEnumerationCap)
        throw Error(ErrorCode::LengthCapExceeded, "n = " + std::to_string(n) + " exceeds " + std::to_string(kEnumerationCap));

    const std::size_t p = graph.size();
    const StripSpec* strip = std::get_if<StripSpec>(&filter);
    const WeightFilter* weight = std::get_if<WeightFilter>(&filter);

    std::vector<Word> out;
    Word word;
    word.reserve(n);
    auto visit = [&](auto&& self, long v) -> void {
        if (word.size() == n) {
            if (!weight || v == weight->m) out.push_back(word);
            return;
        }
        const auto last = static_cast<std::size_t>(word.back());
        for (std::size_t next = 0; next < p; ++next) {
            if (!graph.has_edge(last, next)) continue;
            const long nv = v + graph.weight(last, next);
            if (strip && !strip->admits(word.size(), nv)) continue;
            word.push_back(static_cast<int>(next));
            self(self, nv);
            word.pop_back();
        }
    };
    for (std::size_t start = 0; start < p; ++start) {
        word.assign(1, static_cast<int>(start));
        visit(visit, 0);
    }
    return out;
}

GrowthEstimate finite_r_entropy(const WeightedGraph& graph, const StripSpec& strip, const std::vector<std::size_t>& n_grid)
{
    if (n_grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty length grid");
    for (std::size_t k = 0; k < n_grid.size(); ++k) {
        if (n_grid[k] == 0 || (k > 0 && n_grid[k] <= n_grid[k - 1]))
            throw Error(ErrorCode::InvalidArgument, "length grid must be positive and increasing");
    }
    if (n_grid.back() > kGrowthLengthCap)
        throw Error(ErrorCode::InvalidArgument, "length grid exceeds " + std::to_string(kGrowthLengthCap));

    const auto totals = count_B_totals(graph, n_grid.back(), strip);
    GrowthEstimate est;
    for (std::size_t n : n_grid) {
        const BigInt& c = totals[n - 1];
        est.samples.push_back({n, c, c > 0 ? log(c) / static_cast<double>(n) : 0.0});
    }
    if (est.samples.back().count == 0) {
        est.counts_vanish = true;
        return est;
    }

    auto pair_rate = [&](std::size_t k) {
        const auto& a = est.samples[k - 1];
        const auto& b = est.samples[k];
        return (log(b.count) - log(a.count)) / static_cast<double>(b.n - a.n);
    };
    const std::size_t last = est.samples.size() - 1;
    if (last == 0) {
        est.extrapolated = est.samples[0].rate;
        est.band = std::abs(est.extrapolated);
    } else {
        est.extrapolated = pair_rate(last);
        est.band = last >= 2 ? std::abs(est.extrapolated - pair_rate(last - 1))
                             : std::abs(est.extrapolated - est.samples[last].rate);
    }

    bool up = true;
    bool down = true;
    for (std::size_t k = 1; k < est.samples.size(); ++k) {
        if (est.samples[k].rate < est.samples[k - 1].rate) up = false;
        if (est.samples[k].rate > est.samples[k - 1].rate) down = false;
    }
    est.non_monotone = !up && !down;
    return est;
}

} // namespace rotor

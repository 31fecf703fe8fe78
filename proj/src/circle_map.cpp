#include "rotor/circle_map.hpp"

#include "rotor/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace rotor {

namespace {

using nlohmann::json;

std::vector<Rational> parse_rational_array(const json& node, std::string_view key)
{
    if (!node.is_array())
        throw Error(ErrorCode::SyntaxError, "'" + std::string(key) + "' must be an array of rational strings");
    std::vector<Rational> out;
    out.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        const json& item = node[i];
        if (!item.is_string())
            throw Error(ErrorCode::MalformedRational,
                        std::string(key) + "[" + std::to_string(i) + "] is not a string");
        out.push_back(parse_rational(item.get<std::string>()));
    }
    return out;
}

// Coarse 0/1 transition relation: f(int xi_i) meets int xi_j.
std::vector<std::vector<int>> coarse_transitions(const CircleMapSpec& spec)
{
    const std::size_t p = spec.pieces();
    std::vector<std::vector<int>> adj(p, std::vector<int>(p, 0));
    for (std::size_t i = 0; i < p; ++i) {
        Rational lo = spec.lift_values[i];
        Rational hi = spec.lift_values[i + 1];
        if (hi < lo) std::swap(lo, hi);
        const BigInt n_lo = floor(lo) - 1;
        const BigInt n_hi = ceil(hi);
        for (std::size_t j = 0; j < p; ++j) {
            for (BigInt n = n_lo; n <= n_hi; ++n) {
                const Rational shift(n);
                if (spec.breakpoints[j] + shift < hi && spec.breakpoints[j + 1] + shift > lo) {
                    adj[i][j] = 1;
                    break;
                }
            }
        }
    }
    return adj;
}

bool has_cycle_within(const std::vector<std::vector<int>>& adj, const std::vector<bool>& allowed)
{
    // Iterative DFS colouring on the subgraph induced by `allowed`.
    const std::size_t p = adj.size();
    std::vector<int> colour(p, 0);
    for (std::size_t root = 0; root < p; ++root) {
        if (!allowed[root] || colour[root] != 0) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        colour[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next == p) {
                colour[v] = 2;
                stack.pop_back();
                continue;
            }
            const std::size_t w = next++;
            if (!adj[v][w] || !allowed[w]) continue;
            if (colour[w] == 1) return true;
            if (colour[w] == 0) {
                colour[w] = 1;
                stack.emplace_back(w, 0);
            }
        }
    }
    return false;
}

bool is_breakpoint(const CircleMapSpec& spec, const Rational& value)
{
    return std::binary_search(spec.breakpoints.begin(), spec.breakpoints.end(), value);
}

std::size_t piece_of(const std::vector<Rational>& breakpoints, const Rational& f)
{
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), f);
    const auto idx = static_cast<std::ptrdiff_t>(it - breakpoints.begin()) - 1;
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(breakpoints.size()) - 2));
}

} // namespace

Rational CircleMapSpec::slope(std::size_t piece) const
{
    return Rational((lift_values[piece + 1] - lift_values[piece]) / (breakpoints[piece + 1] - breakpoints[piece]));
}

CircleMapSpec load_map(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SyntaxError, "at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::SyntaxError, "top-level value must be an object");

    for (const auto& item : doc.items()) {
        if (item.key() != "breakpoints" && item.key() != "lift_values")
            throw Error(ErrorCode::UnknownKey, "'" + item.key() + "'");
    }
    for (const char* key : {"breakpoints", "lift_values"})
        if (!doc.contains(key)) throw Error(ErrorCode::MissingKey, std::string("'") + key + "'");

    CircleMapSpec spec;
    spec.breakpoints = parse_rational_array(doc["breakpoints"], "breakpoints");
    spec.lift_values = parse_rational_array(doc["lift_values"], "lift_values");

    if (spec.breakpoints.size() != spec.lift_values.size())
        throw Error(ErrorCode::LengthMismatch, std::to_string(spec.breakpoints.size()) + " breakpoints vs " +
                                                   std::to_string(spec.lift_values.size()) + " lift values");
    if (spec.breakpoints.empty() || spec.breakpoints.front() != 0)
        throw Error(ErrorCode::MissingZeroEndpoint, "first breakpoint must be 0");
    if (spec.breakpoints.size() < 2 || spec.breakpoints.back() != 1)
        throw Error(ErrorCode::MissingUnitEndpoint, "last breakpoint must be 1");
    return spec;
}

CircleMapSpec load_map_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open map file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_map(buffer.str());
}

std::string dump_map(const CircleMapSpec& spec)
{
    json doc;
    doc["breakpoints"] = json::array();
    doc["lift_values"] = json::array();
    for (const auto& d : spec.breakpoints) doc["breakpoints"].push_back(to_string(d));
    for (const auto& v : spec.lift_values) doc["lift_values"].push_back(to_string(v));
    return doc.dump(2);
}

std::string_view to_string(Condition condition)
{
    switch (condition) {
    case Condition::Partition: return "partition";
    case Condition::DegreeOne: return "degree_one";
    case Condition::LiftNormalization: return "lift_normalization";
    case Condition::Markov: return "markov";
    case Condition::NonzeroSlopes: return "nonzero_slopes";
    case Condition::Expansion: return "expansion";
    }
    return "unknown";
}

std::string_view failure_name(Condition condition)
{
    switch (condition) {
    case Condition::Partition: return "InvalidPartition";
    case Condition::DegreeOne: return "DegreeNotOne";
    case Condition::LiftNormalization: return "LiftNotNormalized";
    case Condition::Markov: return "MarkovViolation";
    case Condition::NonzeroSlopes: return "ZeroSlope";
    case Condition::Expansion: return "NotExpanding";
    }
    return "Unknown";
}

bool ValidationReport::passed() const
{
    return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.passed; });
}

const ConditionResult& ValidationReport::at(Condition condition) const
{
    for (const auto& c : conditions)
        if (c.condition == condition) return c;
    throw Error(ErrorCode::InvalidArgument, "condition not in report");
}

std::vector<std::string> ValidationReport::failures() const
{
    std::vector<std::string> out;
    for (const auto& c : conditions)
        if (!c.passed) out.emplace_back(failure_name(c.condition));
    return out;
}

std::string ValidationReport::summary() const
{
    std::ostringstream os;
    for (const auto& c : conditions) {
        os << to_string(c.condition) << ": " << (c.passed ? "pass" : "FAIL");
        if (!c.passed) os << " (" << failure_name(c.condition) << ")";
        if (!c.witness.empty()) os << " -- " << c.witness;
        os << '\n';
    }
    os << "expansion_status: "
       << (expansion == ExpansionStatus::Strict ? "strict" : expansion == ExpansionStatus::Eventual ? "eventual" : "failed")
       << " (mode " << (mode == ExpansionMode::Strict ? "strict" : "eventual") << ")\n";
    return os.str();
}

ValidationReport validate(const CircleMapSpec& spec, ExpansionMode mode)
{
    ValidationReport report;
    report.mode = mode;
    auto add = [&](Condition c, bool ok, std::string witness = {}) {
        report.conditions.push_back({c, ok, std::move(witness)});
    };

    const auto& d = spec.breakpoints;
    const auto& F = spec.lift_values;

    std::string partition_witness;
    if (d.size() < 2) partition_witness = "fewer than two breakpoints";
    else if (d.size() != F.size()) partition_witness = "breakpoint/lift value count mismatch";
    else if (d.front() != 0) partition_witness = "d_0 = " + to_string(d.front());
    else if (d.back() != 1) partition_witness = "d_p = " + to_string(d.back());
    else {
        for (std::size_t i = 0; i + 1 < d.size(); ++i)
            if (!(d[i] < d[i + 1])) {
                partition_witness = "d_" + std::to_string(i) + " = " + to_string(d[i]) + " >= d_" +
                                    std::to_string(i + 1) + " = " + to_string(d[i + 1]);
                break;
            }
    }
    if (!partition_witness.empty()) {
        add(Condition::Partition, false, partition_witness);
        for (auto c : {Condition::DegreeOne, Condition::LiftNormalization, Condition::Markov,
                       Condition::NonzeroSlopes, Condition::Expansion})
            add(c, false, "not checked: invalid partition");
        return report;
    }
    add(Condition::Partition, true);

    const Rational degree = F.back() - F.front();
    add(Condition::DegreeOne, degree == 1,
        degree == 1 ? "" : "F(1) - F(0) = " + to_string(degree));

    const bool normalized = F.front() >= 0 && F.front() <= 1;
    add(Condition::LiftNormalization, normalized, normalized ? "" : "F(0) = " + to_string(F.front()));

    std::string markov_witness;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Rational image = frac(F[i]);
        if (!is_breakpoint(spec, image)) {
            markov_witness = "F(" + to_string(d[i]) + ") = " + to_string(F[i]) + ", and " + to_string(image) +
                             " is not a breakpoint";
            break;
        }
    }
    add(Condition::Markov, markov_witness.empty(), markov_witness);

    const std::size_t p = spec.pieces();
    std::vector<Rational> slopes(p);
    std::string zero_witness;
    for (std::size_t i = 0; i < p; ++i) {
        slopes[i] = spec.slope(i);
        if (slopes[i] == 0 && zero_witness.empty()) zero_witness = "piece " + std::to_string(i) + " is constant";
    }
    add(Condition::NonzeroSlopes, zero_witness.empty(), zero_witness);

    bool all_strict = true;
    bool all_weak = true;
    std::vector<bool> unit(p, false);
    std::string expansion_witness;
    for (std::size_t i = 0; i < p; ++i) {
        const Rational magnitude = abs(slopes[i]);
        if (magnitude <= 1) all_strict = false;
        if (magnitude < 1) {
            all_weak = false;
            if (expansion_witness.empty())
                expansion_witness = "|a_" + std::to_string(i) + "| = " + to_string(magnitude) + " < 1";
        }
        unit[i] = magnitude == 1;
    }
    if (all_strict) report.expansion = ExpansionStatus::Strict;
    else if (all_weak && markov_witness.empty() && !has_cycle_within(coarse_transitions(spec), unit))
        report.expansion = ExpansionStatus::Eventual;
    else {
        report.expansion = ExpansionStatus::Failed;
        if (expansion_witness.empty()) expansion_witness = "a cycle of slope-magnitude-1 pieces has product 1";
    }

    bool expansion_ok = report.expansion != ExpansionStatus::Failed;
    if (mode == ExpansionMode::Strict && report.expansion != ExpansionStatus::Strict) {
        expansion_ok = false;
        if (expansion_witness.empty()) {
            for (std::size_t i = 0; i < p; ++i)
                if (abs(slopes[i]) <= 1) {
                    expansion_witness = "strict mode: |a_" + std::to_string(i) + "| = " + to_string(abs(slopes[i]));
                    break;
                }
        }
    }
    if (expansion_ok && report.expansion == ExpansionStatus::Eventual)
        expansion_witness = "eventual expansion only (some |a_i| = 1)";
    add(Condition::Expansion, expansion_ok, expansion_witness);
    return report;
}

Rational lift(const CircleMapSpec& spec, const Rational& x)
{
    const BigInt n = floor(x);
    const Rational f = x - Rational(n);
    const std::size_t i = piece_of(spec.breakpoints, f);
    return spec.lift_values[i] + spec.slope(i) * (f - spec.breakpoints[i]) + Rational(n);
}

std::vector<Rational> lift_iterate(const CircleMapSpec& spec, const Rational& x, std::size_t n)
{
    std::vector<Rational> orbit;
    orbit.reserve(n + 1);
    orbit.push_back(x);
    for (std::size_t k = 0; k < n; ++k) orbit.push_back(lift(spec, orbit.back()));
    return orbit;
}

MarkovPartition::MarkovPartition(CircleMapSpec refined, std::size_t refinement_depth)
    : lift_(std::move(refined)), depth_(refinement_depth)
{
    slopes_.reserve(lift_.pieces());
    for (std::size_t i = 0; i < lift_.pieces(); ++i) slopes_.push_back(lift_.slope(i));
}

Interval MarkovPartition::element(std::size_t i) const
{
    return {lift_.breakpoints[i], lift_.breakpoints[i + 1]};
}

std::vector<Interval> MarkovPartition::elements() const
{
    std::vector<Interval> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(element(i));
    return out;
}

std::pair<Rational, Rational> MarkovPartition::image(std::size_t i) const
{
    Rational a = lift_.lift_values[i];
    Rational b = lift_.lift_values[i + 1];
    if (b < a) std::swap(a, b);
    return {a, b};
}

std::optional<long> MarkovPartition::shift(std::size_t i, std::size_t j) const
{
    const auto [lo, hi] = image(i);
    const BigInt first = ceil(Rational(lo - lift_.breakpoints[j]));
    const BigInt last = floor(Rational(hi - lift_.breakpoints[j + 1]));
    if (first > last) return std::nullopt;
    return first.get_si();
}

std::size_t MarkovPartition::state_of(const Rational& x) const
{
    return piece_of(lift_.breakpoints, frac(x));
}

MarkovPartition refine(const CircleMapSpec& spec, ExpansionMode mode)
{
    const ValidationReport report = validate(spec, mode);
    if (!report.passed()) throw Error(ErrorCode::InvalidSpec, report.failures().front());

    const std::size_t p = spec.pieces();
    std::vector<Rational> slopes(p);
    for (std::size_t i = 0; i < p; ++i) slopes[i] = spec.slope(i);

    std::set<Rational> current(spec.breakpoints.begin(), spec.breakpoints.end());
    for (std::size_t depth = 0; depth <= kRefinementDepthCap; ++depth) {
        const std::vector<Rational> points(current.begin(), current.end());
        bool fine = true;
        for (std::size_t e = 0; e + 1 < points.size() && fine; ++e) {
            const std::size_t piece = piece_of(spec.breakpoints, points[e]);
            if (abs(slopes[piece]) * (points[e + 1] - points[e]) >= 1) fine = false;
        }
        if (fine) {
            CircleMapSpec refined;
            refined.breakpoints = points;
            refined.lift_values.reserve(points.size());
            for (const auto& x : points) refined.lift_values.push_back(lift(spec, x));
            return MarkovPartition(std::move(refined), depth);
        }

        // xi^(n+1) = xi ∩ f^-1 xi^(n): add preimages of the current breakpoints.
        std::set<Rational> next(spec.breakpoints.begin(), spec.breakpoints.end());
        for (std::size_t i = 0; i < p; ++i) {
            Rational lo = spec.lift_values[i];
            Rational hi = spec.lift_values[i + 1];
            if (hi < lo) std::swap(lo, hi);
            for (BigInt n = floor(lo); n <= ceil(hi); ++n) {
                for (const auto& e : points) {
                    const Rational target = e + Rational(n);
                    if (target < lo || target > hi) continue;
                    next.insert(spec.breakpoints[i] + (target - spec.lift_values[i]) / slopes[i]);
                }
            }
        }
        current = std::move(next);
    }
    throw Error(ErrorCode::RefinementDiverged,
                "image diameters still >= 1 after depth " + std::to_string(kRefinementDepthCap));
}

CylinderInterval cylinder(const MarkovPartition& partition, std::span<const int> word)
{
    if (word.empty()) throw Error(ErrorCode::InvalidArgument, "cylinder of the empty word");
    for (int s : word)
        if (s < 0 || static_cast<std::size_t>(s) >= partition.size())
            throw Error(ErrorCode::InvalidArgument, "state " + std::to_string(s) + " out of range");

    CylinderInterval out{Word(word.begin(), word.end()), {Rational(0), Rational(0)}};
    const auto& d = partition.breakpoints();
    const auto& F = partition.as_spec().lift_values;

    const auto last = static_cast<std::size_t>(word.back());
    Rational lo = d[last];
    Rational hi = d[last + 1];
    for (std::size_t k = word.size() - 1; k-- > 0;) {
        const auto i = static_cast<std::size_t>(word[k]);
        const auto s = partition.shift(i, static_cast<std::size_t>(word[k + 1]));
        if (!s) return out;
        const Rational shift(*s);
        const Rational& a = partition.slopes()[i];
        Rational x1 = d[i] + (lo + shift - F[i]) / a;
        Rational x2 = d[i] + (hi + shift - F[i]) / a;
        if (x2 < x1) std::swap(x1, x2);
        lo = std::move(x1);
        hi = std::move(x2);
    }
    out.interval = {lo, hi};
    return out;
}

} // namespace rotor

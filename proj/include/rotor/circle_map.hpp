#pragma once

// Piecewise affine Markov circle maps of degree one, described exactly by the
// values of their lift F at a set of breakpoints 0 = d_0 < ... < d_p = 1.
//
// Conventions:
//   - partition elements are half-open, xi_i = [d_i, d_{i+1});
//   - states and words are 0-based;
//   - F is continuous, so it is fixed by its breakpoint values and is affine
//     in between. F(x + 1) = F(x) + 1 extends it to the real line.

#include "rotor/rational.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rotor {

using Word = std::vector<int>;

struct CircleMapSpec {
    std::vector<Rational> breakpoints;
    std::vector<Rational> lift_values;

    std::size_t pieces() const noexcept { return breakpoints.empty() ? 0 : breakpoints.size() - 1; }
    Rational slope(std::size_t piece) const;
};

/// Parses the JSON map format: {"breakpoints": [...], "lift_values": [...]}
/// with every rational written as a string "p/q" or "p".
CircleMapSpec load_map(std::string_view text);
CircleMapSpec load_map_file(const std::filesystem::path& path);
std::string dump_map(const CircleMapSpec& spec);

enum class ExpansionMode {
    Eventual, ///< |a_i| >= 1 and every cycle has slope product > 1
    Strict,   ///< |a_i| > 1 for all pieces
};

enum class Condition {
    Partition,         ///< d_0 = 0, d_p = 1, strictly increasing
    DegreeOne,         ///< F(d_p) = F(d_0) + 1
    LiftNormalization, ///< F(d_0) in [0, 1]
    Markov,            ///< F(d_i) mod 1 is a breakpoint
    NonzeroSlopes,
    Expansion,
};

std::string_view to_string(Condition condition);
/// Name of the failure for a condition, e.g. "DegreeNotOne".
std::string_view failure_name(Condition condition);

enum class ExpansionStatus { Strict, Eventual, Failed };

struct ConditionResult {
    Condition condition;
    bool passed = false;
    std::string witness;
};

struct ValidationReport {
    std::vector<ConditionResult> conditions;
    ExpansionStatus expansion = ExpansionStatus::Failed;
    ExpansionMode mode = ExpansionMode::Eventual;

    bool passed() const;
    const ConditionResult& at(Condition condition) const;
    /// Failure names of every failed condition, in check order.
    std::vector<std::string> failures() const;
    std::string summary() const;
};

ValidationReport validate(const CircleMapSpec& spec, ExpansionMode mode = ExpansionMode::Eventual);

/// Closed-open interval [lo, hi); empty when hi <= lo.
struct Interval {
    Rational lo;
    Rational hi;

    bool empty() const { return !(lo < hi); }
    Rational length() const { return empty() ? Rational(0) : Rational(hi - lo); }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Exact lift evaluation.
Rational lift(const CircleMapSpec& spec, const Rational& x);

/// Orbit F^0 x, ..., F^n x of the lift (n + 1 values).
std::vector<Rational> lift_iterate(const CircleMapSpec& spec, const Rational& x, std::size_t n);

class MarkovPartition {
public:
    MarkovPartition(CircleMapSpec refined, std::size_t refinement_depth);

    std::size_t size() const noexcept { return lift_.pieces(); }
    std::size_t refinement_depth() const noexcept { return depth_; }
    const std::vector<Rational>& breakpoints() const noexcept { return lift_.breakpoints; }
    const std::vector<Rational>& slopes() const noexcept { return slopes_; }

    Interval element(std::size_t i) const;
    std::vector<Interval> elements() const;

    /// Closed image interval F([d_i, d_{i+1}]), sorted.
    std::pair<Rational, Rational> image(std::size_t i) const;

    /// Integer s with closure(xi_j) + s contained in F(closure(xi_i)), if any.
    std::optional<long> shift(std::size_t i, std::size_t j) const;

    /// The lift restricted to the refined breakpoints; refine() of this spec
    /// returns depth 0.
    const CircleMapSpec& as_spec() const noexcept { return lift_; }

    /// Index of the half-open element containing frac(x).
    std::size_t state_of(const Rational& x) const;

private:
    CircleMapSpec lift_;
    std::vector<Rational> slopes_;
    std::size_t depth_;
};

inline constexpr std::size_t kRefinementDepthCap = 64;

/// Coarsest dynamical refinement whose elements all have image diameter < 1.
/// Throws InvalidSpec when validate() fails, RefinementDiverged past the cap.
MarkovPartition refine(const CircleMapSpec& spec, ExpansionMode mode = ExpansionMode::Eventual);

struct CylinderInterval {
    Word word;
    Interval interval;
};

/// Delta_w = xi_{w0} ∩ f^-1 xi_{w1} ∩ ... computed on closures and reported
/// half-open. Empty exactly when w is not admissible.
CylinderInterval cylinder(const MarkovPartition& partition, std::span<const int> word);

} // namespace rotor

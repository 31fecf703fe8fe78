#include "rotor/cli.hpp"

#include "rotor/circle_map.hpp"
#include "rotor/complexity_lab.hpp"
#include "rotor/entropy_solver.hpp"
#include "rotor/error.hpp"
#include "rotor/genfun.hpp"
#include "rotor/graph_io.hpp"
#include "rotor/markov_measure.hpp"
#include "rotor/symbolic_graph.hpp"
#include "rotor/word_counts.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unistd.h>

namespace rotor {

std::string format_real(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
        f << content;
        f.flush();
        if (!f) {
            std::filesystem::remove(tmp);
            throw Error(ErrorCode::InvalidArgument, "failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

namespace {

int exit_code(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NoCycle:
    case ErrorCode::NonPrimitive:
    case ErrorCode::NoConvergence:
    case ErrorCode::AlphaOutsideInterval:
    case ErrorCode::BracketFailure:
    case ErrorCode::DegenerateEntry:
    case ErrorCode::ZeroNotSimple:
    case ErrorCode::HorizonCapExceeded:
    case ErrorCode::EpsilonTooLarge:
    case ErrorCode::LengthCapExceeded:
    case ErrorCode::RefinementDiverged:
        return kExitNumeric;
    default:
        return kExitValidation;
    }
}

struct Pipeline {
    CircleMapSpec spec;
    MarkovPartition partition;
    WeightedGraph graph;
};

ExpansionMode mode_of(const RunConfig& c)
{
    return c.strict_expansion ? ExpansionMode::Strict : ExpansionMode::Eventual;
}

Pipeline load(const RunConfig& c)
{
    CircleMapSpec spec = load_map_file(c.map_file);
    MarkovPartition partition = refine(spec, mode_of(c));
    WeightedGraph graph = build_graph(partition);
    return {std::move(spec), std::move(partition), std::move(graph)};
}

Rational require_alpha(const RunConfig& c)
{
    if (!c.alpha) throw Error(ErrorCode::InvalidArgument, "--alpha is required");
    return parse_rational(*c.alpha);
}

// Sends an artifact to --out when given, otherwise to the stream.
void emit(const RunConfig& c, std::ostream& out, const std::string& text)
{
    if (c.out) write_atomic(*c.out, text);
    else out << text;
}

template <typename T>
void print_matrix(std::ostream& os, const Matrix<T>& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << '\n';
    }
}

void print_matrix(std::ostream& os, const Eigen::MatrixXd& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << format_real(m(i, j));
        os << '\n';
    }
}

void print_vector(std::ostream& os, const Eigen::VectorXd& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? " " : "") << format_real(v(i));
    os << '\n';
}

int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const CircleMapSpec spec = load_map_file(c.map_file);
    const ValidationReport report = validate(spec, mode_of(c));
    out << report.summary();
    if (report.passed()) return kExitSuccess;
    for (const auto& name : report.failures()) err << name << '\n';
    return kExitValidation;
}

int cmd_graph(const RunConfig& c, std::ostream& out)
{
    emit(c, out, graph_to_json(load(c).graph));
    return kExitSuccess;
}

int cmd_rotation_interval(const RunConfig& c, std::ostream& out)
{
    const auto iv = rotation_interval(load(c).graph);
    out << "lo: " << to_string(iv.lo) << '\n' << "hi: " << to_string(iv.hi) << '\n';
    return kExitSuccess;
}

int cmd_structure(const RunConfig& c, std::ostream& out)
{
    const Pipeline p = load(c);
    out << "states: " << p.graph.size() << '\n'
        << "refinement_depth: " << p.partition.refinement_depth() << '\n'
        << "s0: " << p.graph.s0() << '\n'
        << "rho: " << p.graph.rho() << '\n'
        << structure_checks(p.graph).summary();
    return kExitSuccess;
}

int cmd_counts(const RunConfig& c, std::ostream& out)
{
    const Pipeline p = load(c);
    std::ostringstream os;
    if (c.alpha) {
        const Rational alpha = require_alpha(c);
        const CountMatrix cm = count_B(p.graph, c.n, {alpha, c.r});
        os << "n,alpha,r,total\n" << c.n << ',' << to_string(alpha) << ',' << c.r << ',' << cm.total() << '\n';
    } else {
        os << "n,m,total\n";
        const auto all = count_L_all(p.graph, c.n);
        for (std::size_t s = 0; s < all.size(); ++s) {
            const long m = static_cast<long>(s) + static_cast<long>(c.n - 1) * p.graph.s0();
            if (c.weight && *c.weight != m) continue;
            BigInt total = 0;
            for (const auto& v : all[s].data()) total += v;
            os << c.n << ',' << m << ',' << total << '\n';
        }
        if (c.weight && all.empty()) os << c.n << ',' << *c.weight << ",0\n";
    }
    emit(c, out, os.str());
    return kExitSuccess;
}

int cmd_genfun(const RunConfig& c, std::ostream& out)
{
    const Pipeline p = load(c);
    out << "H = " << denominator_H(p.graph).to_string() << '\n';
    if (c.entries.empty()) return kExitSuccess;
    const PolyMatrix n = numerator_matrix(p.graph);
    for (const auto& [i, j] : c.entries) {
        if (i >= p.graph.size() || j >= p.graph.size())
            throw Error(ErrorCode::InvalidArgument, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
        out << "N[" << i << "," << j << "] = " << n(i, j).to_string() << '\n';
    }
    return kExitSuccess;
}

void print_solution(std::ostream& out, const DirectionSolution& s)
{
    out << "alpha: " << format_real(s.alpha_true) << '\n'
        << "theta: " << format_real(DirectionSpec{s.alpha_true}.theta()) << '\n'
        << "status: " << to_string(s.status) << '\n'
        << "x0: " << format_real(s.x0) << '\n'
        << "y0: " << format_real(s.y0) << '\n'
        << "entropy: " << format_real(s.entropy) << '\n';
    if (s.status == SolveStatus::OutsideInterval) return;
    out << "Q: " << format_real(s.Q) << '\n'
        << "residual_H: " << format_real(s.residual_H) << '\n'
        << "residual_stationarity: " << format_real(s.residual_stationarity) << '\n'
        << "f_nonzero_diag: " << (s.f_nonzero_diag ? "true" : "false") << '\n'
        << "Q_nonzero: " << (s.Q_nonzero ? "true" : "false") << '\n';
}

int cmd_entropy(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const Pipeline p = load(c);
    const EntropyModel model(p.graph);
    const DirectionSolution s = model.solve(DirectionSpec::from_rational(require_alpha(c)));
    print_solution(out, s);
    if (s.solved()) return kExitSuccess;
    err << "flag: " << to_string(s.status) << '\n';
    return kExitNumeric;
}

int cmd_entropy_curve(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const Pipeline p = load(c);
    const EntropyCurve curve = EntropyModel(p.graph).curve(c.samples);
    bool flagged = false;
    for (const auto& row : curve.rows) flagged = flagged || !row.solved();
    std::ostringstream os;
    os << "alpha,x0,y0,entropy" << (flagged ? ",flag" : "") << '\n';
    for (const auto& row : curve.rows) {
        os << format_real(row.alpha_true) << ',' << format_real(row.x0) << ',' << format_real(row.y0) << ','
           << format_real(row.entropy);
        if (flagged) os << ',' << (row.solved() ? "" : to_string(row.status));
        os << '\n';
    }
    emit(c, out, os.str());
    if (flagged) err << "some rows are flagged (boundary or outside the interval)\n";
    return kExitSuccess;
}

int cmd_max_direction(const RunConfig& c, std::ostream& out)
{
    const MaxDirection md = max_entropy_direction(load(c).graph);
    out << "alpha_max: " << format_real(md.alpha_max) << '\n'
        << "theta_max: " << format_real(md.theta_max) << '\n'
        << "h_top: " << format_real(md.h_top) << '\n'
        << "lambda: " << format_real(std::exp(md.h_top)) << '\n';
    return kExitSuccess;
}

int cmd_measure(const RunConfig& c, std::ostream& out)
{
    const Pipeline p = load(c);
    const EntropyModel model(p.graph);
    const DirectionSolution s = model.solve(DirectionSpec::from_rational(require_alpha(c)));
    const MarkovMeasure mu = build_measure(p.graph, s);
    out << "alpha: " << format_real(s.alpha_true) << '\n'
        << "x0: " << format_real(s.x0) << '\n'
        << "y0: " << format_real(s.y0) << '\n'
        << "Pi:\n";
    print_matrix(out, mu.Pi);
    out << "q: ";
    print_vector(out, mu.q.transpose());
    out << "l (raw): ";
    print_vector(out, mu.perron.raw_left());
    out << "r (raw): ";
    print_vector(out, mu.perron.raw_right());
    const double h = measure_entropy(mu);
    out << "entropy: " << format_real(h) << '\n'
        << "drift: " << format_real(expected_drift(mu, p.graph)) << '\n'
        << "solver_entropy: " << format_real(s.entropy) << '\n'
        << "difference: " << format_real(h - s.entropy) << '\n';
    return kExitSuccess;
}

int cmd_complexity(const RunConfig& c, std::ostream& out)
{
    const Pipeline p = load(c);
    std::optional<Rational> eps;
    if (c.epsilon) eps = parse_rational(*c.epsilon);
    const auto rows = bounds_report(p.partition, p.graph, require_alpha(c), c.r, c.m, c.k, eps);
    std::ostringstream os;
    os << "T,lower,observed,upper,rate\n";
    for (const auto& row : rows)
        os << row.T << ',' << row.lower << ',' << row.observed << ',' << row.upper << ',' << format_real(row.rate) << '\n';
    emit(c, out, os.str());
    return kExitSuccess;
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        const auto& cmd = config.subcommand;
        if (cmd == "validate") return cmd_validate(config, out, err);
        if (cmd == "graph") return cmd_graph(config, out);
        if (cmd == "rotation-interval") return cmd_rotation_interval(config, out);
        if (cmd == "structure") return cmd_structure(config, out);
        if (cmd == "counts") return cmd_counts(config, out);
        if (cmd == "genfun") return cmd_genfun(config, out);
        if (cmd == "entropy") return cmd_entropy(config, out, err);
        if (cmd == "entropy-curve") return cmd_entropy_curve(config, out, err);
        if (cmd == "max-direction") return cmd_max_direction(config, out);
        if (cmd == "measure") return cmd_measure(config, out);
        if (cmd == "complexity") return cmd_complexity(config, out);
        err << "unknown subcommand '" << cmd << "'\n";
        return kExitValidation;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::filesystem::filesystem_error& e) {
        err << e.what() << '\n';
        return kExitValidation;
    }
}

} // namespace rotor

#include "rotor/cli.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <regex>

namespace {

std::pair<std::size_t, std::size_t> parse_entry(const std::string& text)
{
    static const std::regex pattern(R"((\d+),(\d+))");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw CLI::ValidationError("--entry", "expected i,j");
    return {std::stoul(m[1]), std::stoul(m[2])};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Directional complexity and entropy of piecewise affine Markov circle maps"};
    app.require_subcommand(1);

    rotor::RunConfig config;
    std::vector<std::string> entries;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--map", config.map_file, "map file (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_flag("--strict-expansion", config.strict_expansion, "require |slope| > 1 on every piece");
    };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", config.out, "write the artifact atomically to this file"); };
    auto add_alpha = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--alpha", config.alpha, "direction cot(theta) as p/q");
        if (required) opt->required();
    };

    add_common(app.add_subcommand("validate", "check the map conditions"));
    auto* graph = app.add_subcommand("graph", "print the weighted transition graph as JSON");
    add_common(graph);
    add_out(graph);
    add_common(app.add_subcommand("rotation-interval", "exact rotation interval"));
    add_common(app.add_subcommand("structure", "primitivity and rank condition"));

    auto* counts = app.add_subcommand("counts", "exact word counts");
    add_common(counts);
    add_out(counts);
    counts->add_option("--n", config.n, "word length")->check(CLI::PositiveNumber);
    counts->add_option("--weight", config.weight, "count words of this weight (M(L^n_m))");
    add_alpha(counts, false);
    counts->add_option("--r", config.r, "strip half-width (with --alpha)")->check(CLI::PositiveNumber);

    auto* genfun = app.add_subcommand("genfun", "denominator H and numerator entries");
    add_common(genfun);
    genfun->add_option("--entry", entries, "numerator entry i,j (0-based); repeatable");

    auto* entropy = app.add_subcommand("entropy", "directional entropy");
    add_common(entropy);
    add_alpha(entropy, true);

    auto* curve = app.add_subcommand("entropy-curve", "entropy over the rotation interval as CSV");
    add_common(curve);
    add_out(curve);
    curve->add_option("--samples", config.samples, "number of directions")->check(CLI::Range(2, 100000));

    add_common(app.add_subcommand("max-direction", "direction of maximal entropy"));

    auto* measure = app.add_subcommand("measure", "Markov measure matched to a direction");
    add_common(measure);
    add_alpha(measure, true);

    auto* complexity = app.add_subcommand("complexity", "separated sets against the word-count bounds as CSV");
    add_common(complexity);
    add_out(complexity);
    add_alpha(complexity, true);
    complexity->add_option("--r", config.r, "window half-width")->check(CLI::PositiveNumber);
    complexity->add_option("--m", config.m, "block length")->check(CLI::PositiveNumber);
    complexity->add_option("--k", config.k, "number of blocks")->check(CLI::PositiveNumber);
    complexity->add_option("--epsilon", config.epsilon, "resolution p/q (default: epsilon_m)");

    try {
        app.parse(argc, argv);
        for (const auto& e : entries) config.entries.push_back(parse_entry(e));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : rotor::kExitValidation;
    }
    config.subcommand = app.get_subcommands().front()->get_name();
    return rotor::run(config, std::cout, std::cerr);
}

#include "rotor/graph_io.hpp"

#include "rotor/error.hpp"

#include "json.hpp"

namespace rotor {

using nlohmann::json;

std::string graph_to_json(const WeightedGraph& graph)
{
    json edges = json::array();
    for (const auto& e : graph.edges()) edges.push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight}});
    const json doc = {{"states", graph.size()}, {"s0", graph.s0()}, {"rho", graph.rho()}, {"edges", edges}};
    return doc.dump(2) + "\n";
}

WeightedGraph graph_from_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SyntaxError, "at byte " + std::to_string(e.byte));
    }
    for (const char* key : {"states", "edges"})
        if (!doc.is_object() || !doc.contains(key)) throw Error(ErrorCode::MissingKey, key);
    try {
        std::vector<Edge> edges;
        for (const auto& e : doc.at("edges"))
            edges.push_back({e.at("from").get<int>(), e.at("to").get<int>(), e.at("weight").get<long>()});
        WeightedGraph graph(doc.at("states").get<std::size_t>(), std::move(edges));
        if (doc.contains("s0") && doc.at("s0").get<long>() != graph.s0())
            throw Error(ErrorCode::InvalidArgument, "s0 does not match the edge weights");
        if (doc.contains("rho") && doc.at("rho").get<long>() != graph.rho())
            throw Error(ErrorCode::InvalidArgument, "rho does not match the edge weights");
        return graph;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, e.what());
    }
}

} // namespace rotor

#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "predsearch/graph.hpp"
#include "predsearch/instance.hpp"

namespace predsearch {

/// Shortest decimal form that round-trips the double exactly; integral
/// values print without a fractional part.
inline std::string format_number(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

inline nlohmann::json instance_to_json(const SearchInstance& inst) {
    nlohmann::json j;
    j["n"] = inst.graph.num_vertices();
    j["directed"] = inst.graph.directed();
    auto& edges = j["edges"] = nlohmann::json::array();
    for (const Edge& e : inst.graph.edges()) edges.push_back({e.u, e.v, e.weight});
    j["root"] = inst.root;
    j["goal"] = inst.goal;
    j["predictions"] = inst.predictions;
    j["flags"] = {{"integer_distance", inst.integer_distance}};
    if (inst.embedding) j["embedding"] = *inst.embedding;
    return j;
}

inline SearchInstance instance_from_json(const nlohmann::json& j) {
    auto fail = [](const std::string& field, const std::string& what) -> ParseError {
        return ParseError("instance file: field '" + field + "': " + what);
    };
    try {
        SearchInstance inst;
        const int n = j.at("n").get<int>();
        if (n < 1) throw fail("n", "must be >= 1");
        const bool directed = j.value("directed", false);
        Graph g(n, directed);
        int line = 0;
        for (const auto& e : j.at("edges")) {
            ++line;
            if (!e.is_array() || e.size() != 3)
                throw fail("edges[" + std::to_string(line - 1) + "]", "expected [u, v, weight]");
            const int u = e[0].get<int>();
            const int v = e[1].get<int>();
            const double w = e[2].get<double>();
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw fail("edges[" + std::to_string(line - 1) + "]", "dangling vertex id");
            if (!(w >= 0.0))
                throw fail("edges[" + std::to_string(line - 1) + "]", "negative weight");
            g.add_edge(u, v, w);
        }
        inst.graph = std::move(g);
        inst.root = j.at("root").get<int>();
        inst.goal = j.at("goal").get<int>();
        if (inst.root < 0 || inst.root >= n) throw fail("root", "dangling vertex id");
        if (inst.goal < 0 || inst.goal >= n) throw fail("goal", "dangling vertex id");
        inst.predictions = j.at("predictions").get<std::vector<double>>();
        if (static_cast<int>(inst.predictions.size()) != n)
            throw fail("predictions", "length must equal n");
        if (j.contains("flags")) inst.integer_distance = j["flags"].value("integer_distance", false);
        if (j.contains("embedding")) {
            auto emb = j["embedding"].get<std::vector<int>>();
            if (static_cast<int>(emb.size()) != n) throw fail("embedding", "length must equal n");
            inst.embedding = std::move(emb);
        }
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance file: ") + e.what());
    }
}

inline void save_instance(const SearchInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << instance_to_json(inst).dump(2) << '\n';
}

inline SearchInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("instance file " + path + ": " + e.what());
    }
    return instance_from_json(j);
}

}  // namespace predsearch

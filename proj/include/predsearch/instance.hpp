#pragma once

#include <optional>
#include <vector>

#include "predsearch/graph.hpp"

namespace predsearch {

/// Per-vertex noisy estimate of distance-to-goal. May be negative under
/// unclamped absolute noise.
using Prediction = std::vector<double>;

/// One unit of experimentation: environment, endpoints and advice.
struct SearchInstance {
    Graph graph;
    VertexId root = 0;
    VertexId goal = 0;
    Prediction predictions;
    bool integer_distance = false;
    /// Optional path embedding (vertex -> position id), used by the
    /// embedding-parameterized planning checks.
    std::optional<std::vector<VertexId>> embedding;

    void validate() const {
        graph.check_vertex(root);
        graph.check_vertex(goal);
        if (static_cast<int>(predictions.size()) != graph.num_vertices())
            throw InputError("instance: prediction vector size mismatch");
        if (dijkstra_to(graph, goal)[root] == kInf)
            throw InputError("instance: goal unreachable from root");
        if (embedding && static_cast<int>(embedding->size()) != graph.num_vertices())
            throw InputError("instance: embedding size mismatch");
    }

    /// True distance-to-goal at every vertex (edge directions respected).
    std::vector<double> distances_to_goal() const { return dijkstra_to(graph, goal); }

    double opt() const { return distances_to_goal()[root]; }
};

}  // namespace predsearch

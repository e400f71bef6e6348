#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "predsearch/graph.hpp"
#include "predsearch/instance.hpp"
#include "predsearch/prediction.hpp"
#include "predsearch/steiner.hpp"

namespace predsearch {

/// L^-_phi(c): vertices whose implied error is at most the threshold.
/// Monotone in the threshold.
inline std::vector<VertexId> sublevel_set(const ImpliedError& phi, double threshold) {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < static_cast<VertexId>(phi.values.size()); ++v)
        if (phi.values[v] <= threshold) out.push_back(v);
    return out;
}

struct PlanningRound {
    double threshold = 0.0;
    std::vector<VertexId> sublevel;
    double steiner_weight = 0.0;
    int steiner_vertices = 0;
    double steiner_diameter = 0.0;
    double travel_cost = 0.0;
};

struct PlanningTrace {
    std::vector<double> thresholds;  // 1, 2, 4, ... as executed
    std::vector<PlanningRound> rounds;
    std::vector<VertexId> visits;  // physical traversal order, starts at root
    double alg = 0.0;
    double opt = 0.0;
    double phi_goal = 0.0;
};

/// Full-information planning: for doubling thresholds 2^lambda, build the
/// Steiner tree of the implied-error sublevel set (exact on trees,
/// 2-approximate otherwise), walk from the current position to the
/// nearest unvisited tree vertex along a true shortest path, and follow
/// the tree's Euler walk. Both the walk and the whole run stop the moment
/// the goal is visited. phi0 requires an unweighted instance, phi1 an
/// integer-distance one.
inline PlanningTrace run_full_info(const SearchInstance& inst, Phi which) {
    inst.validate();
    const Graph& g = inst.graph;
    if (g.directed()) throw InputError("run_full_info: directed graphs unsupported");
    if (!is_connected(g)) throw InputError("run_full_info: graph must be connected");
    if (which == Phi::phi0) {
        for (const Edge& e : g.edges())
            if (e.weight != 1.0)
                throw InputError("run_full_info: phi0 requires an unweighted instance");
    } else if (!inst.integer_distance) {
        throw InputError("run_full_info: phi1 requires an integer-distance instance");
    }

    const DistanceMatrix dm = all_pairs(g);
    const ImpliedError phi = implied_error(dm, inst.predictions, which, inst.integer_distance);
    const bool tree_graph = is_tree(g);

    PlanningTrace trace;
    trace.opt = dm(inst.root, inst.goal);
    trace.phi_goal = phi.values[inst.goal];
    trace.visits.push_back(inst.root);

    std::vector<char> visited(g.num_vertices(), 0);
    visited[inst.root] = 1;
    VertexId pos = inst.root;
    bool found = (inst.root == inst.goal);

    auto move_to = [&](VertexId next, double hop) {
        trace.alg += hop;
        trace.rounds.back().travel_cost += hop;
        trace.visits.push_back(next);
        visited[next] = 1;
        pos = next;
        return next == inst.goal;
    };

    for (int lambda = 0; !found; ++lambda) {
        const double threshold = std::ldexp(1.0, lambda);
        trace.thresholds.push_back(threshold);
        PlanningRound& round = trace.rounds.emplace_back();
        round.threshold = threshold;
        round.sublevel = sublevel_set(phi, threshold);
        if (round.sublevel.empty()) continue;

        const Subtree tree = tree_graph ? steiner_tree_exact_on_tree(g, round.sublevel)
                                        : steiner_tree_approx(g, round.sublevel);
        round.steiner_weight = tree.weight;
        round.steiner_vertices = static_cast<int>(tree.vertices.size());
        round.steiner_diameter = diameter(dm, tree.vertices);

        VertexId entry = -1;
        for (VertexId v : tree.vertices)  // ascending: ties go to the smallest id
            if (!visited[v] && (entry == -1 || dm(pos, v) < dm(pos, entry))) entry = v;
        if (entry == -1) continue;  // tree fully visited already; goal lies further out

        const ShortestPath approach = shortest_path(g, pos, entry);
        for (std::size_t i = 1; i < approach.path.size() && !found; ++i) {
            const double hop = dm(pos, approach.path[i]);
            found = move_to(approach.path[i], hop);
        }
        if (found) break;

        const auto adj = tree.adjacency(g.num_vertices());
        auto edge_weight = [&](VertexId a, VertexId b) {
            for (auto [nbr, w] : adj[a])
                if (nbr == b) return w;
            throw std::logic_error("euler walk left the tree");
        };
        const std::vector<VertexId> walk = euler_walk(tree, entry, g.num_vertices());
        for (std::size_t i = 1; i < walk.size() && !found; ++i)
            found = move_to(walk[i], edge_weight(walk[i - 1], walk[i]));
    }
    return trace;
}

}  // namespace predsearch

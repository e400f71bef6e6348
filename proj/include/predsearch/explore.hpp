#pragma once

#include <functional>
#include <queue>
#include <set>
#include <vector>

#include "predsearch/graph.hpp"
#include "predsearch/instance.hpp"
#include "predsearch/prediction.hpp"

namespace predsearch {

/// The exploration-time view of the environment: visited vertices, the
/// external vertex boundary, and every edge adjacent to a visited vertex
/// (tail in the visited set when directed). Distances measured here can
/// only overestimate the true ones.
class ObservedState {
public:
    explicit ObservedState(const Graph& g)
        : visited_(g.num_vertices(), 0), observed_adj_(g.num_vertices()) {}

    const std::vector<VertexId>& visit_order() const { return visit_order_; }
    const std::set<VertexId>& frontier() const { return frontier_; }
    const std::vector<Edge>& observed_edges() const { return observed_edges_; }
    bool visited(VertexId v) const { return visited_[v] != 0; }

    /// Move `v` from the frontier into the visited set and reveal its
    /// incident edges. Only frontier vertices may be revealed, except the
    /// very first call which plants the root.
    void reveal(VertexId v, const Graph& g) {
        g.check_vertex(v);
        if (visit_order_.empty()) {
            // initialization at the root
        } else if (!frontier_.contains(v)) {
            throw ProtocolViolation("reveal: vertex " + std::to_string(v) +
                                    " is not on the frontier");
        }
        visited_[v] = 1;
        frontier_.erase(v);
        visit_order_.push_back(v);
        for (auto [u, w] : g.neighbors(v)) {
            if (!visited_[u]) frontier_.insert(u);
            // Undirected edges incident to an already-visited neighbor were
            // revealed when that neighbor was; skip the duplicate.
            if (!g.directed() && visited_[u]) continue;
            observed_edges_.push_back({v, u, w});
            observed_adj_[v].push_back({u, w});
            if (!g.directed()) observed_adj_[u].push_back({v, w});
        }
    }

    /// Shortest known distances from `source` (+inf beyond the observed
    /// subgraph). `pred_out` as in dijkstra().
    std::vector<double> observed_distances(VertexId source,
                                           std::vector<VertexId>* pred_out = nullptr) const {
        const int n = static_cast<int>(visited_.size());
        std::vector<double> dist(n, kInf);
        std::vector<VertexId> pred(n, -1);
        using Item = std::pair<double, VertexId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[source] = 0.0;
        heap.push({0.0, source});
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (d > dist[u]) continue;
            for (auto [v, w] : observed_adj_[u]) {
                const double cand = d + w;
                if (cand < dist[v] || (cand == dist[v] && pred[v] > u)) {
                    dist[v] = cand;
                    pred[v] = u;
                    heap.push({cand, v});
                }
            }
        }
        if (pred_out) *pred_out = std::move(pred);
        return dist;
    }

private:
    std::vector<char> visited_;
    std::vector<VertexId> visit_order_;
    std::set<VertexId> frontier_;
    std::vector<Edge> observed_edges_;
    std::vector<std::vector<std::pair<VertexId, double>>> observed_adj_;
};

/// Pure-function flavor of ObservedState::reveal.
inline ObservedState reveal(const ObservedState& state, VertexId v, const Graph& g) {
    ObservedState next = state;
    next.reveal(v, g);
    return next;
}

/// Completed search: the visited sequence with per-step known-path costs,
/// plus the true-progress sequence used by the analyses.
struct SearchTrace {
    std::vector<VertexId> visits;    // v_0 = root, ..., v_T = goal
    std::vector<double> step_costs;  // step i: d_{G_i}(v_{i-1}, v_i)
    std::vector<double> deltas;      // true progress per step, sums to opt
    double alg = 0.0;
    double opt = 0.0;
};

struct ExploreOptions {
    /// When set, vertices passed through while walking a known shortest
    /// path are revealed (and can end the search early at the goal). The
    /// analyzed model keeps this off: V_i = {v_0, ..., v_i}.
    bool opportunistic_reveal = false;
};

namespace detail {

/// Shared driver for all frontier-argmin strategies. `objective` maps
/// (vertex, observed distance from the current position) to a score;
/// +inf marks a candidate as ineligible this step. Ties break toward the
/// smallest vertex id.
template <typename ObjectiveFn>
SearchTrace run_frontier_search(const SearchInstance& inst, ObjectiveFn objective,
                                const char* empty_message,
                                const ExploreOptions& options = {}) {
    inst.validate();
    const Graph& g = inst.graph;
    ObservedState state(g);
    state.reveal(inst.root, g);

    SearchTrace trace;
    trace.visits.push_back(inst.root);
    VertexId current = inst.root;
    while (current != inst.goal) {
        if (state.frontier().empty()) throw InfeasibleError(empty_message);
        std::vector<VertexId> pred;
        const std::vector<double> dist = state.observed_distances(current, &pred);
        VertexId best = -1;
        double best_score = kInf;
        for (VertexId v : state.frontier()) {  // ascending id order
            if (dist[v] == kInf) continue;
            const double score = objective(state, v, dist[v]);
            if (score < best_score) {
                best_score = score;
                best = v;
            }
        }
        if (best == -1) throw InfeasibleError(empty_message);

        if (options.opportunistic_reveal) {
            std::vector<VertexId> path;
            for (VertexId x = best; x != -1; x = pred[x]) path.push_back(x);
            std::reverse(path.begin(), path.end());
            bool done = false;
            for (std::size_t i = 1; i < path.size() && !done; ++i) {
                const VertexId x = path[i];
                const double hop = dist[path[i]] - dist[path[i - 1]];
                if (!state.visited(x)) {
                    state.reveal(x, g);
                    trace.visits.push_back(x);
                    trace.step_costs.push_back(hop);
                    current = x;
                    if (x == inst.goal) done = true;
                } else {
                    trace.step_costs.back() += hop;  // fold into the previous step
                }
            }
            if (done) break;
        } else {
            state.reveal(best, g);
            trace.visits.push_back(best);
            trace.step_costs.push_back(dist[best]);
            current = best;
        }
    }

    const std::vector<double> d_goal = inst.distances_to_goal();
    for (double c : trace.step_costs) trace.alg += c;
    trace.opt = d_goal[inst.root];
    for (std::size_t i = 0; i + 1 < trace.visits.size(); ++i)
        trace.deltas.push_back(d_goal[trace.visits[i]] - d_goal[trace.visits[i + 1]]);
    return trace;
}

}  // namespace detail

/// Greedy rule: move to the frontier vertex minimizing
/// d_{G_i}(v_{i-1}, v) + f(v).
inline SearchTrace run_greedy(const SearchInstance& inst, const ExploreOptions& options = {}) {
    return detail::run_frontier_search(
        inst,
        [&](const ObservedState&, VertexId v, double d) { return d + inst.predictions[v]; },
        "run_greedy: frontier exhausted before reaching the goal", options);
}

/// Known-eps rule: greedy restricted to the pruned set
/// S = {v : d(v, root) <= f(root) / (1 - eps)}, with membership tested on
/// observed distances to the root (equal to true distances on trees).
/// An empty eligible frontier means the predictions break the relative
/// error model for this eps.
inline SearchTrace run_pruned_known_eps(const SearchInstance& inst, double eps,
                                        const ExploreOptions& options = {}) {
    if (eps <= 0.0 || eps >= 1.0) throw InputError("run_pruned_known_eps: eps outside (0, 1)");
    const double radius = inst.predictions[inst.root] / (1.0 - eps);
    struct RootDistanceCache {
        const ObservedState* state = nullptr;
        std::size_t revision = 0;
        std::vector<double> dist;
    };
    auto cache = std::make_shared<RootDistanceCache>();
    auto objective = [&inst, radius, cache](const ObservedState& state, VertexId v, double d) {
        if (cache->state != &state || cache->revision != state.visit_order().size()) {
            cache->state = &state;
            cache->revision = state.visit_order().size();
            cache->dist = state.observed_distances(inst.root);
        }
        if (!leq_tol(cache->dist[v], radius)) return kInf;
        return d + inst.predictions[v];
    };
    try {
        return detail::run_frontier_search(
            inst, objective, "pruned search: no frontier vertex inside the pruned set", options);
    } catch (const InfeasibleError& e) {
        throw ModelViolation(e.what());
    }
}

/// Weighted rule for unknown eps: move to the frontier vertex minimizing
/// beta * d_{G_i}(v_{i-1}, v) + f(v). beta = 1 recovers the greedy rule.
inline SearchTrace run_beta_weighted(const SearchInstance& inst, double beta = 2.0 / 3.0,
                                     const ExploreOptions& options = {}) {
    if (beta <= 0.0 || beta > 1.0) throw InputError("run_beta_weighted: beta outside (0, 1]");
    return detail::run_frontier_search(
        inst,
        [&](const ObservedState&, VertexId v, double d) {
            return beta * d + inst.predictions[v];
        },
        "run_beta_weighted: frontier exhausted before reaching the goal", options);
}

/// Baseline: always move to the frontier vertex with the smallest
/// prediction, paying the known-path distance to it.
inline SearchTrace run_smallest_prediction(const SearchInstance& inst,
                                           const ExploreOptions& options = {}) {
    return detail::run_frontier_search(
        inst,
        [&](const ObservedState&, VertexId v, double) { return inst.predictions[v]; },
        "run_smallest_prediction: frontier exhausted before reaching the goal", options);
}

/// Baseline with full graph access: order vertices by A* first expansion
/// under heuristic f and charge the true distance between consecutive
/// first expansions. Re-expansions add no cost.
inline SearchTrace run_astar_order(const SearchInstance& inst) {
    inst.validate();
    const Graph& g = inst.graph;
    const int n = g.num_vertices();
    std::vector<double> gscore(n, kInf);
    std::vector<char> expanded(n, 0);
    using Item = std::pair<double, VertexId>;  // (gscore + f, id)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    gscore[inst.root] = 0.0;
    open.push({inst.predictions[inst.root], inst.root});

    SearchTrace trace;
    while (!open.empty()) {
        const auto [key, u] = open.top();
        open.pop();
        if (key > gscore[u] + inst.predictions[u]) continue;  // stale entry
        if (!expanded[u]) {
            expanded[u] = 1;
            trace.visits.push_back(u);
            if (u == inst.goal) break;
        }
        for (auto [v, w] : g.neighbors(u)) {
            const double cand = gscore[u] + w;
            if (cand < gscore[v]) {
                gscore[v] = cand;
                open.push({cand + inst.predictions[v], v});
            }
        }
    }
    if (trace.visits.empty() || trace.visits.back() != inst.goal)
        throw InfeasibleError("run_astar_order: goal never expanded");

    const std::vector<double> d_goal = inst.distances_to_goal();
    for (std::size_t i = 0; i + 1 < trace.visits.size(); ++i) {
        const double hop = dijkstra(g, trace.visits[i])[trace.visits[i + 1]];
        trace.step_costs.push_back(hop);
        trace.alg += hop;
        trace.deltas.push_back(d_goal[trace.visits[i]] - d_goal[trace.visits[i + 1]]);
    }
    trace.opt = d_goal[inst.root];
    return trace;
}

}  // namespace predsearch

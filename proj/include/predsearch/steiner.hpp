#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <vector>

#include "predsearch/graph.hpp"

namespace predsearch {

/// Tree-shaped subgraph: the result of Steiner-tree routines and the
/// input to Euler walks.
struct Subtree {
    std::vector<VertexId> vertices;  // sorted
    std::vector<Edge> edges;
    double weight = 0.0;

    bool contains(VertexId v) const {
        return std::binary_search(vertices.begin(), vertices.end(), v);
    }

    std::vector<std::vector<std::pair<VertexId, double>>> adjacency(int n) const {
        std::vector<std::vector<std::pair<VertexId, double>>> adj(n);
        for (const Edge& e : edges) {
            adj[e.u].push_back({e.v, e.weight});
            adj[e.v].push_back({e.u, e.weight});
        }
        for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
        return adj;
    }
};

namespace detail {

inline Subtree subtree_from(std::vector<VertexId> vertices, std::vector<Edge> edges) {
    Subtree t;
    t.vertices = std::move(vertices);
    std::sort(t.vertices.begin(), t.vertices.end());
    t.vertices.erase(std::unique(t.vertices.begin(), t.vertices.end()), t.vertices.end());
    t.edges = std::move(edges);
    for (const Edge& e : t.edges) t.weight += e.weight;
    return t;
}

/// Remove degree-1 vertices that are not terminals until none remain.
inline Subtree prune_nonterminal_leaves(int n, std::vector<Edge> edges,
                                        std::span<const VertexId> terminals) {
    std::vector<char> terminal(n, 0);
    for (VertexId t : terminals) terminal[t] = 1;
    std::vector<char> removed_edge(edges.size(), 0);
    std::vector<int> degree(n, 0);
    std::vector<std::vector<int>> incident(n);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        ++degree[edges[i].u];
        ++degree[edges[i].v];
        incident[edges[i].u].push_back(static_cast<int>(i));
        incident[edges[i].v].push_back(static_cast<int>(i));
    }
    std::vector<char> present(n, 0);
    for (const Edge& e : edges) present[e.u] = present[e.v] = 1;
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < n; ++v)
        if (present[v] && degree[v] == 1 && !terminal[v]) stack.push_back(v);
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        present[v] = 0;
        for (int idx : incident[v]) {
            if (removed_edge[idx]) continue;
            removed_edge[idx] = 1;
            const Edge& e = edges[idx];
            const VertexId other = (e.u == v) ? e.v : e.u;
            if (--degree[other] == 1 && !terminal[other] && present[other]) stack.push_back(other);
            --degree[v];
        }
    }
    std::vector<Edge> kept;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (!removed_edge[i]) kept.push_back(edges[i]);
    std::vector<VertexId> verts(terminals.begin(), terminals.end());
    for (const Edge& e : kept) {
        verts.push_back(e.u);
        verts.push_back(e.v);
    }
    return subtree_from(std::move(verts), std::move(kept));
}

}  // namespace detail

/// The unique minimal subtree of a tree spanning `terminals`: the union of
/// pairwise tree paths between them.
inline Subtree steiner_tree_exact_on_tree(const Graph& g, std::span<const VertexId> terminals) {
    if (terminals.empty()) throw InputError("steiner: empty terminal set");
    for (VertexId t : terminals) g.check_vertex(t);
    if (!is_tree(g)) throw InputError("steiner_tree_exact_on_tree: graph is not a tree");
    return detail::prune_nonterminal_leaves(g.num_vertices(), g.edges(), terminals);
}

/// 2-approximate Steiner tree: MST of the metric closure of the terminals,
/// with closure edges expanded into shortest paths and duplicate structure
/// shortcut by a final MST + leaf prune. Exact on trees.
inline Subtree steiner_tree_approx(const Graph& g, std::span<const VertexId> terminals) {
    if (terminals.empty()) throw InputError("steiner: empty terminal set");
    if (g.directed()) throw InputError("steiner_tree_approx: directed graph");
    for (VertexId t : terminals) g.check_vertex(t);
    std::vector<VertexId> terms(terminals.begin(), terminals.end());
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    const int k = static_cast<int>(terms.size());
    if (k == 1) return detail::subtree_from({terms[0]}, {});

    std::vector<std::vector<double>> dist(k);
    std::vector<std::vector<VertexId>> pred(k);
    for (int i = 0; i < k; ++i) dist[i] = dijkstra(g, terms[i], &pred[i]);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (dist[i][terms[j]] == kInf)
                throw InfeasibleError("steiner_tree_approx: unreachable terminal");

    // Prim over the metric closure.
    std::vector<char> in_mst(k, 0);
    std::vector<double> best(k, kInf);
    std::vector<int> parent(k, -1);
    best[0] = 0.0;
    std::vector<std::pair<int, int>> mst_edges;
    for (int round = 0; round < k; ++round) {
        int pick = -1;
        for (int i = 0; i < k; ++i)
            if (!in_mst[i] && (pick == -1 || best[i] < best[pick])) pick = i;
        in_mst[pick] = 1;
        if (parent[pick] != -1) mst_edges.push_back({parent[pick], pick});
        for (int j = 0; j < k; ++j)
            if (!in_mst[j] && dist[pick][terms[j]] < best[j]) {
                best[j] = dist[pick][terms[j]];
                parent[j] = pick;
            }
    }

    // Expand closure edges to shortest paths; keep each graph edge once.
    std::map<std::pair<VertexId, VertexId>, double> union_edges;
    for (auto [i, j] : mst_edges) {
        VertexId x = terms[j];
        while (x != terms[i]) {
            const VertexId p = pred[i][x];
            const auto key = std::minmax(p, x);
            union_edges.emplace(std::pair<VertexId, VertexId>(key.first, key.second),
                                dist[i][x] - dist[i][p]);
            x = p;
        }
    }
    std::vector<Edge> pool;
    for (const auto& [key, w] : union_edges) pool.push_back({key.first, key.second, w});

    // Kruskal over the union subgraph removes any cycles the expansion made.
    std::sort(pool.begin(), pool.end(), [](const Edge& a, const Edge& b) {
        return a.weight != b.weight ? a.weight < b.weight
                                    : std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    std::vector<int> dsu(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) dsu[i] = i;
    auto find = [&](int x) {
        while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
        return x;
    };
    std::vector<Edge> tree_edges;
    for (const Edge& e : pool) {
        const int a = find(e.u), b = find(e.v);
        if (a == b) continue;
        dsu[a] = b;
        tree_edges.push_back(e);
    }
    return detail::prune_nonterminal_leaves(g.num_vertices(), std::move(tree_edges), terms);
}

/// Depth-first double traversal of `tree` from `start`: the closed walk
/// that enters every subtree in ascending neighbor order and backtracks,
/// ending where it began. Every tree vertex appears and the full walk has
/// weight exactly twice the tree weight; callers may truncate the tail.
inline std::vector<VertexId> euler_walk(const Subtree& tree, VertexId start, int n) {
    if (!tree.contains(start)) throw InputError("euler_walk: start vertex not in tree");
    if (tree.vertices.size() == 1) return {start};
    const auto adj = tree.adjacency(n);
    std::vector<VertexId> walk{start};
    // (vertex, parent, next-neighbor index) stack; avoids deep recursion.
    std::vector<std::tuple<VertexId, VertexId, std::size_t>> frames{{start, -1, 0}};
    while (!frames.empty()) {
        auto& [u, parent, idx] = frames.back();
        if (idx >= adj[u].size()) {
            frames.pop_back();
            if (!frames.empty()) walk.push_back(std::get<0>(frames.back()));
            continue;
        }
        const VertexId v = adj[u][idx++].first;
        if (v == parent) continue;
        walk.push_back(v);
        frames.push_back({v, u, 0});
    }
    return walk;
}

}  // namespace predsearch

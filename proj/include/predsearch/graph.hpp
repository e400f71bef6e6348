#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "predsearch/errors.hpp"

namespace predsearch {

using VertexId = int;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Relative tolerance for real-valued comparisons throughout: double
/// accumulation over at most n^2 terms.
inline constexpr double kRelTol = 1e-9;

inline bool nearly_equal(double a, double b) {
    return std::abs(a - b) <= kRelTol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// lhs <= rhs up to the relative tolerance.
inline bool leq_tol(double lhs, double rhs) {
    return lhs <= rhs + kRelTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    double weight = 0.0;
};

/// Weighted graph with dense vertex ids in [0, n). Undirected graphs
/// store each edge once and traverse it both ways. Immutable once built;
/// safe to share across threads.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n, bool directed = false) : n_(n), directed_(directed), adj_(n) {
        if (n < 0) throw InputError("graph: negative vertex count");
    }

    Graph(int n, bool directed, std::span<const Edge> edges) : Graph(n, directed) {
        for (const Edge& e : edges) add_edge(e.u, e.v, e.weight);
    }

    void add_edge(VertexId u, VertexId v, double weight) {
        check_vertex(u);
        check_vertex(v);
        if (!(weight >= 0.0)) throw InputError("graph: negative or NaN edge weight");
        edges_.push_back({u, v, weight});
        adj_[u].push_back({v, weight});
        if (!directed_) adj_[v].push_back({u, weight});
    }

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    bool directed() const { return directed_; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Out-neighbors (all neighbors when undirected) as (vertex, weight) pairs.
    std::span<const std::pair<VertexId, double>> neighbors(VertexId v) const {
        check_vertex(v);
        return adj_[v];
    }

    void check_vertex(VertexId v) const {
        if (v < 0 || v >= n_)
            throw InputError("graph: vertex id " + std::to_string(v) + " outside [0, " +
                             std::to_string(n_) + ")");
    }

    /// Order-insensitive content hash; lets derived tables detect that they
    /// were built from a different graph.
    std::uint64_t fingerprint() const {
        auto mix = [](std::uint64_t h, std::uint64_t x) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h;
        };
        std::uint64_t h = mix(0x8000000000000000ULL, static_cast<std::uint64_t>(n_));
        h = mix(h, directed_ ? 1 : 0);
        std::uint64_t edge_acc = 0;
        for (const Edge& e : edges_) {
            std::uint64_t w_bits;
            double w = e.weight;
            static_assert(sizeof(w_bits) == sizeof(w));
            __builtin_memcpy(&w_bits, &w, sizeof(w));
            std::uint64_t eh = 0xcbf29ce484222325ULL;
            eh = mix(eh, static_cast<std::uint64_t>(e.u));
            eh = mix(eh, static_cast<std::uint64_t>(e.v));
            eh = mix(eh, w_bits);
            edge_acc += eh;  // commutative, edge order does not matter
        }
        return mix(h, edge_acc);
    }

private:
    int n_ = 0;
    bool directed_ = false;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<VertexId, double>>> adj_;
};

/// Dijkstra from `source`; unreachable vertices get +inf.
/// `pred_out`, when given, receives the predecessor of each vertex on a
/// shortest path tree (-1 at the source and unreachable vertices).
/// Among equal-length paths the lexicographically smallest predecessor wins,
/// which keeps path reconstruction deterministic.
inline std::vector<double> dijkstra(const Graph& g, VertexId source,
                                    std::vector<VertexId>* pred_out = nullptr) {
    g.check_vertex(source);
    const int n = g.num_vertices();
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
        for (auto [v, w] : g.neighbors(u)) {
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

/// Shortest-path distances to every vertex, following edges backwards.
/// Equals dijkstra() on undirected graphs.
inline std::vector<double> dijkstra_to(const Graph& g, VertexId target) {
    if (!g.directed()) return dijkstra(g, target);
    Graph rev(g.num_vertices(), true);
    for (const Edge& e : g.edges()) rev.add_edge(e.v, e.u, e.weight);
    return dijkstra(rev, target);
}

struct ShortestPath {
    double distance = kInf;
    std::vector<VertexId> path;  // empty when unreachable
};

inline ShortestPath shortest_path(const Graph& g, VertexId u, VertexId v) {
    g.check_vertex(u);
    g.check_vertex(v);
    std::vector<VertexId> pred;
    const std::vector<double> dist = dijkstra(g, u, &pred);
    ShortestPath result;
    result.distance = dist[v];
    if (dist[v] == kInf) return result;
    for (VertexId x = v; x != -1; x = pred[x]) result.path.push_back(x);
    std::reverse(result.path.begin(), result.path.end());
    return result;
}

/// All-pairs shortest-path table. d(v,v) = 0, +inf when unreachable,
/// symmetric iff the graph is undirected.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    explicit DistanceMatrix(const Graph& g)
        : n_(g.num_vertices()), fingerprint_(g.fingerprint()), rows_(g.num_vertices()) {
        for (VertexId v = 0; v < n_; ++v) rows_[v] = dijkstra(g, v);
    }

    int size() const { return n_; }
    std::uint64_t fingerprint() const { return fingerprint_; }
    bool built_from(const Graph& g) const { return fingerprint_ == g.fingerprint(); }

    double operator()(VertexId u, VertexId v) const { return rows_[u][v]; }
    const std::vector<double>& row(VertexId u) const { return rows_[u]; }

    /// All distinct finite pairwise distances, ascending.
    std::vector<double> realized_distances() const {
        std::vector<double> values;
        for (VertexId u = 0; u < n_; ++u)
            for (VertexId v = 0; v < n_; ++v)
                if (rows_[u][v] < kInf) values.push_back(rows_[u][v]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        return values;
    }

private:
    int n_ = 0;
    std::uint64_t fingerprint_ = 0;
    std::vector<std::vector<double>> rows_;
};

inline DistanceMatrix all_pairs(const Graph& g) { return DistanceMatrix(g); }

/// max over pairs in `s` of shortest-path distance (+inf if some pair is
/// mutually unreachable). Singletons have diameter 0.
inline double diameter(const Graph& g, std::span<const VertexId> s) {
    if (s.empty()) throw InputError("diameter: empty vertex set");
    double best = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::vector<double> dist = dijkstra(g, s[i]);
        for (std::size_t j = 0; j < s.size(); ++j) best = std::max(best, dist[s[j]]);
    }
    return best;
}

inline double diameter(const DistanceMatrix& dm, std::span<const VertexId> s) {
    if (s.empty()) throw InputError("diameter: empty vertex set");
    double best = 0.0;
    for (VertexId u : s)
        for (VertexId v : s) best = std::max(best, dm(u, v));
    return best;
}

inline bool is_connected(const Graph& g) {
    const int n = g.num_vertices();
    if (n == 0) return true;
    if (g.directed()) {
        const auto out = dijkstra(g, 0);
        const auto in = dijkstra_to(g, 0);
        for (VertexId v = 0; v < n; ++v)
            if (out[v] == kInf || in[v] == kInf) return false;
        return true;
    }
    const auto dist = dijkstra(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](double d) { return d == kInf; });
}

/// Connected, acyclic, undirected.
inline bool is_tree(const Graph& g) {
    return !g.directed() && g.num_edges() == g.num_vertices() - 1 && is_connected(g);
}

/// True when every finite pairwise distance is integral (up to fp noise).
inline bool has_integer_distances(const DistanceMatrix& dm) {
    for (VertexId u = 0; u < dm.size(); ++u)
        for (VertexId v = 0; v < dm.size(); ++v) {
            const double d = dm(u, v);
            if (d == kInf) continue;
            if (std::abs(d - std::round(d)) > 1e-9) return false;
        }
    return true;
}

}  // namespace predsearch

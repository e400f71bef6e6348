#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "predsearch/graph.hpp"
#include "predsearch/instance.hpp"
#include "predsearch/prediction.hpp"
#include "predsearch/rng.hpp"

namespace predsearch {

enum class Family {
    random_tree,
    random_lobster,
    erdos_renyi,
    circular_ladder,
    lb_p3,
    lb_star,
    lb_relative_star,
    lb_planning_tree,
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::random_tree: return "random_tree";
        case Family::random_lobster: return "random_lobster";
        case Family::erdos_renyi: return "erdos_renyi";
        case Family::circular_ladder: return "circular_ladder";
        case Family::lb_p3: return "lb_p3";
        case Family::lb_star: return "lb_star";
        case Family::lb_relative_star: return "lb_relative_star";
        case Family::lb_planning_tree: return "lb_planning_tree";
    }
    return "?";
}

inline Family family_from_name(const std::string& name) {
    for (Family f : {Family::random_tree, Family::random_lobster, Family::erdos_renyi,
                     Family::circular_ladder, Family::lb_p3, Family::lb_star,
                     Family::lb_relative_star, Family::lb_planning_tree})
        if (name == family_name(f)) return f;
    throw InputError("unknown graph family: " + name);
}

struct InstanceSpec {
    Family family = Family::random_tree;
    int n = 0;
    double er_p = 0.1;          // erdos_renyi edge probability
    double lobster_p1 = 0.5;    // first-level leaf attachment probability
    double lobster_p2 = 0.5;    // second-level leaf attachment probability
    std::uint64_t seed = 0;

    void validate() const {
        switch (family) {
            case Family::random_tree:
            case Family::random_lobster:
                if (n < 1) throw InputError("family: n must be >= 1");
                break;
            case Family::erdos_renyi:
                if (n < 1) throw InputError("family: n must be >= 1");
                if (er_p <= 0.0 || er_p >= 1.0) throw InputError("erdos_renyi: p outside (0, 1)");
                break;
            case Family::circular_ladder:
                if (n < 6 || n % 2 != 0)
                    throw InputError("circular_ladder: n must be even and >= 6");
                break;
            default:
                throw InputError("gen_family: lower-bound families have dedicated generators");
        }
        if (lobster_p1 <= 0.0 || lobster_p1 >= 1.0 || lobster_p2 <= 0.0 || lobster_p2 >= 1.0)
            throw InputError("lobster: attachment probabilities outside (0, 1)");
    }
};

namespace detail {

/// Uniform labelled tree from a random Pruefer sequence.
inline Graph prufer_tree(int n, Rng& rng) {
    Graph g(n, false);
    if (n == 1) return g;
    if (n == 2) {
        g.add_edge(0, 1, 1.0);
        return g;
    }
    std::vector<int> seq(n - 2);
    for (int& s : seq) s = rng.next_int(n);
    std::vector<int> degree(n, 1);
    for (int s : seq) ++degree[s];
    // smallest-leaf decoding
    int ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int s : seq) {
        g.add_edge(leaf, s, 1.0);
        if (--degree[s] == 1 && s < ptr) {
            leaf = s;
        } else {
            ++ptr;
            while (ptr < n && degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    g.add_edge(leaf, n - 1, 1.0);
    return g;
}

}  // namespace detail

inline constexpr int kConnectedRejectionBudget = 1000;

/// Sample a graph from one of the experimental families. All families are
/// undirected and unweighted. Deterministic given (family, params, seed).
inline Graph gen_family(const InstanceSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    switch (spec.family) {
        case Family::random_tree:
            return detail::prufer_tree(spec.n, rng);

        case Family::erdos_renyi: {
            for (int attempt = 0; attempt < kConnectedRejectionBudget; ++attempt) {
                Graph g(spec.n, false);
                for (int u = 0; u < spec.n; ++u)
                    for (int v = u + 1; v < spec.n; ++v)
                        if (rng.next_double() < spec.er_p) g.add_edge(u, v, 1.0);
                if (is_connected(g)) return g;
            }
            throw GenerationError("erdos_renyi: no connected sample within " +
                                  std::to_string(kConnectedRejectionBudget) + " attempts");
        }

        case Family::circular_ladder: {
            const int k = spec.n / 2;
            Graph g(spec.n, false);
            for (int i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1, 1.0);
            g.add_edge(0, k - 1, 1.0);
            for (int i = 0; i + 1 < k; ++i) g.add_edge(k + i, k + i + 1, 1.0);
            g.add_edge(k, 2 * k - 1, 1.0);
            for (int i = 0; i < k; ++i) g.add_edge(i, k + i, 1.0);
            return g;
        }

        case Family::random_lobster: {
            // Size-exact variant: a path backbone of random length, then the
            // remaining vertices attach to the backbone with probability p1
            // or to an existing first-level leaf otherwise.
            const int n = spec.n;
            const int backbone = n <= 2 ? n : 1 + rng.next_int(n);
            Graph g(n, false);
            for (int i = 0; i + 1 < backbone; ++i) g.add_edge(i, i + 1, 1.0);
            std::vector<int> level1;
            for (int v = backbone; v < n; ++v) {
                if (level1.empty() || rng.next_double() < spec.lobster_p1) {
                    g.add_edge(v, rng.next_int(backbone), 1.0);
                    level1.push_back(v);
                } else if (rng.next_double() < spec.lobster_p2) {
                    g.add_edge(v, level1[rng.next_int(static_cast<int>(level1.size()))], 1.0);
                } else {
                    g.add_edge(v, rng.next_int(backbone), 1.0);
                    level1.push_back(v);
                }
            }
            return g;
        }

        default:
            throw InputError("gen_family: not a stochastic family");
    }
}

/// Worst and benign goal placements of the two-edge path instance: root at
/// the middle, predictions (0, w, 0). Both ends look identical to the
/// searcher; the worst placement puts the goal opposite the lowest-id
/// tie-break and costs 3w against opt = w.
struct P3Pair {
    SearchInstance worst;
    SearchInstance benign;
};

inline P3Pair gen_lb_p3(double w) {
    if (!(w > 0.0)) throw InputError("gen_lb_p3: w must be positive");
    Graph g(3, false);
    g.add_edge(0, 1, w);
    g.add_edge(1, 2, w);
    SearchInstance base;
    base.graph = g;
    base.root = 1;
    base.predictions = {0.0, w, 0.0};
    base.integer_distance = std::floor(w) == w;
    P3Pair pair{base, base};
    pair.worst.goal = 2;
    pair.benign.goal = 0;
    return pair;
}

/// Star with root at the center, every edge of weight einf/2, and uniform
/// leaf predictions that hide the goal: f(center) = w, f(leaf) = 2w. The
/// goal is the highest-id leaf so a lowest-id tie-break realizes the
/// worst case: opt + (n-2) * einf.
inline SearchInstance gen_lb_star(int n, double einf) {
    if (n < 4) throw InputError("gen_lb_star: n must be >= 4");
    if (!(einf > 0.0)) throw InputError("gen_lb_star: einf must be positive");
    const double w = einf / 2.0;
    Graph g(n, false);
    SearchInstance inst;
    inst.predictions.assign(n, 2.0 * w);
    inst.predictions[0] = w;
    for (int leaf = 1; leaf < n; ++leaf) g.add_edge(0, leaf, w);
    inst.graph = g;
    inst.root = 0;
    inst.goal = n - 1;
    inst.integer_distance = std::floor(w) == w;
    return inst;
}

/// Star of unit edges plus a pendant goal behind the highest-id leaf, with
/// weights chosen so eps = w1 / (w1 + w2) and uniform leaf predictions
/// (1 - eps)(2 w1 + w2). Every vertex satisfies the relative error model;
/// exploring all wrong branches first gives ratio (2(n-3)+1) eps + (1-eps).
inline SearchInstance gen_lb_relative_star(int n, double eps) {
    if (n < 6) throw InputError("gen_lb_relative_star: n must be >= 6");
    if (eps <= 0.0 || eps >= 1.0) throw InputError("gen_lb_relative_star: eps outside (0, 1)");
    const double w1 = 1.0;
    const double w2 = w1 * (1.0 - eps) / eps;
    Graph g(n, false);
    for (int leaf = 1; leaf <= n - 2; ++leaf) g.add_edge(0, leaf, w1);
    g.add_edge(n - 2, n - 1, w2);
    SearchInstance inst;
    inst.graph = g;
    inst.root = 0;
    inst.goal = n - 1;
    inst.predictions.assign(n, (1.0 - eps) * (2.0 * w1 + w2));
    inst.predictions[0] = w1 + w2;
    inst.predictions[n - 1] = 0.0;
    inst.integer_distance = false;
    return inst;
}

/// The planning lower-bound tree: a root with `delta` unit-edge children,
/// each child with delta - 1 unit-edge descendants, each descendant with a
/// weight-w pendant. Uniform per-level predictions put all the error on
/// the goal subtree (the goal is the first pendant). n = 2 delta^2 - delta + 1.
inline SearchInstance gen_lb_planning_tree(int delta, double w) {
    if (delta < 2) throw InputError("gen_lb_planning_tree: delta must be >= 2");
    if (!(w > 0.0)) throw InputError("gen_lb_planning_tree: w must be positive");
    const int n = 2 * delta * delta - delta + 1;
    Graph g(n, false);
    const auto v_id = [&](int i) { return 1 + i; };  // i in [0, delta)
    const auto u_id = [&](int i, int j) { return 1 + delta + i * (delta - 1) + j; };
    const auto w_id = [&](int i, int j) {
        return 1 + delta + delta * (delta - 1) + i * (delta - 1) + j;
    };
    for (int i = 0; i < delta; ++i) {
        g.add_edge(0, v_id(i), 1.0);
        for (int j = 0; j < delta - 1; ++j) {
            g.add_edge(v_id(i), u_id(i, j), 1.0);
            g.add_edge(u_id(i, j), w_id(i, j), w);
        }
    }
    SearchInstance inst;
    inst.graph = g;
    inst.root = 0;
    inst.goal = w_id(0, 0);
    // Every subtree looks identical: predictions on the goal subtree copy
    // the true distances of the error-free subtrees.
    inst.predictions.assign(n, 0.0);
    inst.predictions[0] = w + 2.0;
    for (int i = 0; i < delta; ++i) {
        inst.predictions[v_id(i)] = w + 3.0;
        for (int j = 0; j < delta - 1; ++j) {
            inst.predictions[u_id(i, j)] = w + 4.0;
            inst.predictions[w_id(i, j)] = 2.0 * w + 4.0;
        }
    }
    inst.integer_distance = std::floor(w) == w;
    return inst;
}

}  // namespace predsearch

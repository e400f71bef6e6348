#pragma once

#include <span>
#include <string>
#include <vector>

#include "predsearch/graph.hpp"

namespace predsearch {

/// Exact tours are only needed as a test oracle; the DP over
/// (subset, endpoint) per starting vertex makes 12 the practical cap.
inline constexpr int kTourExactCap = 12;

/// Worst-start shortest walk visiting all of `s`: the maximum over
/// starting vertices in `s` of the minimum-length walk from that vertex
/// that visits every vertex of `s`. Walks may revisit vertices, so on the
/// shortest-path metric the optimum is an ordering of first visits joined
/// by shortest paths, solved exactly by Held-Karp.
inline double tour_cost(const DistanceMatrix& dm, std::span<const VertexId> s) {
    const int k = static_cast<int>(s.size());
    if (k == 0) throw InputError("tour_cost: empty vertex set");
    if (k > kTourExactCap)
        throw CapacityError("tour_cost: |s| = " + std::to_string(k) + " exceeds exact cap " +
                            std::to_string(kTourExactCap));
    std::vector<std::vector<double>> d(k, std::vector<double>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            d[i][j] = dm(s[i], s[j]);
            if (d[i][j] == kInf) throw InfeasibleError("tour_cost: unreachable vertex pair");
        }
    if (k == 1) return 0.0;

    const int full = (1 << k) - 1;
    double worst_start = 0.0;
    std::vector<std::vector<double>> dp(1 << k, std::vector<double>(k, kInf));
    for (int start = 0; start < k; ++start) {
        for (auto& row : dp) std::fill(row.begin(), row.end(), kInf);
        dp[1 << start][start] = 0.0;
        for (int mask = 1; mask <= full; ++mask) {
            if (!(mask & (1 << start))) continue;
            for (int j = 0; j < k; ++j) {
                if (!(mask & (1 << j)) || dp[mask][j] == kInf) continue;
                for (int next = 0; next < k; ++next) {
                    if (mask & (1 << next)) continue;
                    const int nmask = mask | (1 << next);
                    const double cand = dp[mask][j] + d[j][next];
                    if (cand < dp[nmask][next]) dp[nmask][next] = cand;
                }
            }
        }
        double best = kInf;
        for (int j = 0; j < k; ++j) best = std::min(best, dp[full][j]);
        worst_start = std::max(worst_start, best);
    }
    return worst_start;
}

inline double tour_cost(const Graph& g, std::span<const VertexId> s) {
    for (VertexId v : s) g.check_vertex(v);
    return tour_cost(all_pairs(g), s);
}

}  // namespace predsearch

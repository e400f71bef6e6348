#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "predsearch/graph.hpp"
#include "predsearch/prediction.hpp"
#include "predsearch/tour.hpp"

namespace predsearch {

/// Injective vertex map between two graphs, each carrying its
/// shortest-path metric.
struct Embedding {
    const Graph& source;
    const Graph& target;
    std::vector<VertexId> map;  // source id -> target id, injective, total

    VertexId operator()(VertexId v) const { return map[v]; }
};

struct DistortionReport {
    double lip_forward = 1.0;  // ||tau||_Lip
    double lip_inverse = 1.0;  // ||tau^-1||_Lip
    double distortion = 1.0;   // product of the two, >= 1
};

inline void validate_embedding(const Embedding& e) {
    if (static_cast<int>(e.map.size()) != e.source.num_vertices())
        throw InputError("embedding: map must cover every source vertex");
    std::vector<char> seen(e.target.num_vertices(), 0);
    for (VertexId img : e.map) {
        e.target.check_vertex(img);
        if (seen[img]) throw InputError("embedding: map is not injective");
        seen[img] = 1;
    }
}

/// Lipschitz constants of the map and its inverse over all vertex pairs.
/// Scale-invariant: rescaling either metric uniformly leaves the
/// distortion unchanged.
inline DistortionReport distortion(const Embedding& e) {
    validate_embedding(e);
    const int n = e.source.num_vertices();
    DistortionReport report;
    if (n < 2) return report;
    const DistanceMatrix dx = all_pairs(e.source);
    const DistanceMatrix dy = all_pairs(e.target);
    double lip_f = 0.0, lip_i = 0.0;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) {
            const double a = dx(u, v);
            const double b = dy(e.map[u], e.map[v]);
            if (a == kInf || b == kInf)
                throw InputError("distortion: infinite distance between mapped vertices");
            if (a == 0.0 || b == 0.0)
                throw InputError("distortion: zero distance between distinct vertices");
            lip_f = std::max(lip_f, b / a);
            lip_i = std::max(lip_i, a / b);
        }
    report.lip_forward = lip_f;
    report.lip_inverse = lip_i;
    report.distortion = lip_f * lip_i;
    return report;
}

namespace detail {

using Mask = std::uint64_t;

/// Exact minimum set cover by branch and bound; element universe is a
/// bitmask over at most 64 items.
inline int min_cover(Mask universe, const std::vector<Mask>& candidates) {
    if (universe == 0) return 0;
    std::vector<Mask> sets;
    for (Mask c : candidates)
        if ((c & universe) != 0) sets.push_back(c & universe);
    // Drop sets dominated by a superset; they never help an optimal cover.
    std::sort(sets.begin(), sets.end(), [](Mask a, Mask b) {
        return std::popcount(a) > std::popcount(b);
    });
    std::vector<Mask> useful;
    for (Mask s : sets) {
        bool dominated = false;
        for (Mask t : useful)
            if ((s | t) == t) {
                dominated = true;
                break;
            }
        if (!dominated) useful.push_back(s);
    }
    int best = static_cast<int>(useful.size()) + 1;
    auto rec = [&](auto&& self, Mask remaining, int used) -> void {
        if (remaining == 0) {
            best = std::min(best, used);
            return;
        }
        if (used + 1 >= best) return;
        const int pivot = std::countr_zero(remaining);
        for (Mask s : useful)
            if (s & (Mask{1} << pivot)) self(self, remaining & ~s, used + 1);
    };
    rec(rec, universe, 0);
    return best;
}

template <typename CoverFn>
int doubling_scan(const Graph& g, CoverFn cover_count) {
    if (!is_connected(g)) throw InputError("doubling constant: graph must be connected");
    const DistanceMatrix dm = all_pairs(g);
    const int n = g.num_vertices();
    int worst = 1;
    for (const double radius : dm.realized_distances()) {
        if (radius <= 0.0) continue;  // covers only change at realized radii
        for (VertexId center = 0; center < n; ++center)
            worst = std::max(worst, cover_count(dm, center, radius));
    }
    return worst;
}

}  // namespace detail

/// Upper bound on the doubling constant: for every center and realized
/// radius R, greedily cover B(center, R) with balls of radius R/2 and take
/// the largest cover found.
inline int doubling_constant_upper(const Graph& g) {
    return detail::doubling_scan(g, [&](const DistanceMatrix& dm, VertexId center, double radius) {
        const int n = dm.size();
        std::vector<char> needed(n, 0);
        int remaining = 0;
        for (VertexId v = 0; v < n; ++v)
            if (dm(center, v) <= radius) {
                needed[v] = 1;
                ++remaining;
            }
        int balls = 0;
        while (remaining > 0) {
            int best_center = -1, best_gain = -1;
            for (VertexId c = 0; c < n; ++c) {
                int gain = 0;
                for (VertexId v = 0; v < n; ++v)
                    if (needed[v] && dm(c, v) <= radius / 2.0) ++gain;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_center = c;
                }
            }
            for (VertexId v = 0; v < n; ++v)
                if (needed[v] && dm(best_center, v) <= radius / 2.0) {
                    needed[v] = 0;
                    --remaining;
                }
            ++balls;
        }
        return balls;
    });
}

inline constexpr int kDoublingExactCap = 16;

/// Exact doubling constant by exhaustive minimum set cover, for oracle use.
inline int doubling_constant_exact(const Graph& g) {
    if (g.num_vertices() > kDoublingExactCap)
        throw CapacityError("doubling_constant_exact: n exceeds cap " +
                            std::to_string(kDoublingExactCap));
    return detail::doubling_scan(g, [&](const DistanceMatrix& dm, VertexId center, double radius) {
        const int n = dm.size();
        detail::Mask universe = 0;
        for (VertexId v = 0; v < n; ++v)
            if (dm(center, v) <= radius) universe |= detail::Mask{1} << v;
        std::vector<detail::Mask> balls(n, 0);
        for (VertexId c = 0; c < n; ++c)
            for (VertexId v = 0; v < n; ++v)
                if (dm(c, v) <= radius / 2.0) balls[c] |= detail::Mask{1} << v;
        return detail::min_cover(universe, balls);
    });
}

struct TourTransfer {
    double lhs = 0.0;  // tour cost in the source
    double rhs = 0.0;  // ||tau^-1|| times tour cost of the image
    bool holds = false;
};

/// Checks the tour-transfer inequality
///   tour_source(s) <= ||tau^-1|| * tour_target(tau(s)).
inline TourTransfer tour_transfer_check(const Embedding& e, std::span<const VertexId> s) {
    const DistortionReport report = distortion(e);
    std::vector<VertexId> image;
    image.reserve(s.size());
    for (VertexId v : s) image.push_back(e.map[v]);
    TourTransfer result;
    result.lhs = tour_cost(e.source, s);
    result.rhs = report.lip_inverse * tour_cost(e.target, image);
    result.holds = leq_tol(result.lhs, result.rhs);
    return result;
}

}  // namespace predsearch

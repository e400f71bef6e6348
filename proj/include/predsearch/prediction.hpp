#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "predsearch/graph.hpp"
#include "predsearch/instance.hpp"
#include "predsearch/rng.hpp"

namespace predsearch {

/// Derived error metrics of a prediction vector against true
/// distance-to-goal.
struct ErrorProfile {
    int e0 = 0;              // #vertices where f(v) != d(v,g)
    double e1 = 0.0;         // sum |f - d|
    double e1_minus = 0.0;   // sum max{0, d - f}
    double einf_plus = 0.0;  // max positive error
    double eps_max = 0.0;    // max |f-d|/d over v != g; +inf when f(g) != 0
};

/// `exact_compare` switches the e0 "!=" test from the relative tolerance
/// to exact comparison (used on integer-distance instances).
inline ErrorProfile error_profile(std::span<const double> d_to_goal, std::span<const double> f,
                                  VertexId goal, bool exact_compare = false) {
    ErrorProfile p;
    for (std::size_t v = 0; v < f.size(); ++v) {
        const double d = d_to_goal[v];
        const double err = f[v] - d;
        const bool differs = exact_compare ? (f[v] != d) : !nearly_equal(f[v], d);
        if (differs) ++p.e0;
        p.e1 += std::abs(err);
        p.e1_minus += std::max(0.0, -err);
        p.einf_plus = std::max(p.einf_plus, err);
        if (static_cast<VertexId>(v) == goal) {
            if (!nearly_equal(f[v], 0.0)) p.eps_max = kInf;
        } else if (d > 0.0 && d < kInf) {
            p.eps_max = std::max(p.eps_max, std::abs(err) / d);
        }
    }
    p.einf_plus = std::max(0.0, p.einf_plus);
    return p;
}

inline ErrorProfile error_profile(const SearchInstance& inst) {
    return error_profile(inst.distances_to_goal(), inst.predictions, inst.goal,
                         inst.integer_distance);
}

namespace detail {

/// Uniform sample from the simplex {x >= 0, sum x = total} via normalized
/// Exp(1) variates.
inline std::vector<double> simplex_sample(std::size_t n, double total, Rng& rng) {
    std::vector<double> x(n);
    double sum = 0.0;
    for (double& xi : x) {
        xi = rng.exponential();
        sum += xi;
    }
    for (double& xi : x) xi *= total / sum;
    return x;
}

}  // namespace detail

/// Absolute-error predictions: error magnitudes drawn uniformly from the
/// scaled simplex with l1 norm `e1`, each entry signed by an independent
/// fair coin. Predictions are deliberately not clamped at zero.
inline Prediction gen_absolute_error(std::span<const double> d_to_goal, double e1,
                                     std::uint64_t seed) {
    if (e1 < 0.0) throw InputError("gen_absolute_error: negative e1");
    Rng rng(seed);
    Prediction f(d_to_goal.begin(), d_to_goal.end());
    if (e1 == 0.0 || f.empty()) return f;
    const std::vector<double> e = detail::simplex_sample(f.size(), e1, rng);
    for (std::size_t v = 0; v < f.size(); ++v) f[v] += rng.next_bool() ? e[v] : -e[v];
    return f;
}

/// Deterministic part of the admissible generator: scale the raw magnitude
/// vector up until the per-coordinate caps d(v,g) absorb exactly `e1` of
/// mass (water filling), then subtract. Guarantees 0 <= f <= d and
/// ||f - d||_1 = e1.
inline Prediction admissible_from_raw(std::span<const double> d_to_goal,
                                      std::span<const double> raw, double e1) {
    const std::size_t n = d_to_goal.size();
    const double capacity = std::accumulate(d_to_goal.begin(), d_to_goal.end(), 0.0);
    if (e1 < 0.0 || e1 > capacity * (1.0 + kRelTol))
        throw InputError("gen_admissible_error: e1 exceeds total distance mass");
    double raw_sum = 0.0;
    for (double r : raw) raw_sum += r;
    Prediction f(d_to_goal.begin(), d_to_goal.end());
    if (e1 == 0.0 || raw_sum == 0.0) return f;

    // Find t with sum_v min(t * raw_v, d_v) = e1, scanning saturation
    // breakpoints in increasing d_v / raw_v order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto breakpoint = [&](std::size_t v) {
        return raw[v] > 0.0 ? d_to_goal[v] / raw[v] : kInf;
    };
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return breakpoint(a) < breakpoint(b); });
    double saturated_mass = 0.0;
    double active_raw = raw_sum;
    double t = kInf;
    for (std::size_t i = 0; i < n; ++i) {
        const double cand =
            active_raw > 0.0 ? (e1 - saturated_mass) / active_raw : kInf;
        if (cand <= breakpoint(order[i])) {
            t = cand;
            break;
        }
        saturated_mass += d_to_goal[order[i]];
        active_raw -= raw[order[i]];
    }
    if (t == kInf) t = breakpoint(order[n - 1]);  // e1 == capacity: saturate all
    for (std::size_t v = 0; v < n; ++v)
        if (raw[v] > 0.0) f[v] -= std::min(t * raw[v], d_to_goal[v]);
    return f;
}

/// Admissible predictions: f <= d pointwise, f >= 0, ||f - d||_1 = e1.
inline Prediction gen_admissible_error(std::span<const double> d_to_goal, double e1,
                                       std::uint64_t seed) {
    Rng rng(seed);
    if (e1 == 0.0 || d_to_goal.empty())
        return admissible_from_raw(d_to_goal, std::vector<double>(d_to_goal.size(), 0.0), 0.0);
    return admissible_from_raw(d_to_goal, detail::simplex_sample(d_to_goal.size(), e1, rng), e1);
}

/// Relative-error predictions f(v) = (1 + e_v) d(v,g), where e_v is a
/// centered Gaussian of standard deviation eps/2 conditioned on
/// e_v in [-eps, eps]. Every vertex satisfies the relative error model and
/// f(g) = 0.
inline Prediction gen_relative_error(std::span<const double> d_to_goal, double eps,
                                     std::uint64_t seed) {
    if (eps < 0.0 || eps >= 1.0) throw InputError("gen_relative_error: eps outside [0, 1)");
    Rng rng(seed);
    Prediction f(d_to_goal.size());
    for (std::size_t v = 0; v < f.size(); ++v) {
        const double ev = eps == 0.0 ? 0.0 : rng.truncated_normal(0.0, eps / 2.0, -eps, eps);
        f[v] = (1.0 + ev) * d_to_goal[v];
    }
    return f;
}

enum class Phi { phi0, phi1 };

/// Implied error of the prediction vector at each candidate goal v:
/// phi0(v) counts vertices whose prediction is inconsistent with v being
/// the goal, phi1(v) sums the inconsistency magnitudes.
struct ImpliedError {
    Phi which = Phi::phi0;
    std::vector<double> values;
};

inline ImpliedError implied_error(const DistanceMatrix& dm, std::span<const double> f, Phi which,
                                  bool exact_compare = false) {
    const int n = dm.size();
    ImpliedError result;
    result.which = which;
    result.values.assign(n, 0.0);
    for (VertexId v = 0; v < n; ++v) {
        double acc = 0.0;
        for (VertexId u = 0; u < n; ++u) {
            const double d = dm(u, v);
            if (which == Phi::phi0) {
                const bool differs = exact_compare ? (f[u] != d) : !nearly_equal(f[u], d);
                if (differs) acc += 1.0;
            } else {
                acc += std::abs(f[u] - d);
            }
        }
        result.values[v] = acc;
    }
    return result;
}

inline ImpliedError implied_error(const Graph& g, std::span<const double> f, Phi which,
                                  bool exact_compare = false) {
    return implied_error(all_pairs(g), f, which, exact_compare);
}

}  // namespace predsearch

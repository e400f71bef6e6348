#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "predsearch/families.hpp"
#include "predsearch/prediction.hpp"

using namespace predsearch;

namespace {

Graph unit_path(int n) {
    Graph g(n, false);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, 1.0);
    return g;
}

double l1_against(const std::vector<double>& f, const std::vector<double>& d) {
    double acc = 0.0;
    for (std::size_t v = 0; v < f.size(); ++v) acc += std::abs(f[v] - d[v]);
    return acc;
}

}  // namespace

TEST_CASE("error profile of perfect predictions is all zeros") {
    SearchInstance inst;
    inst.graph = unit_path(4);
    inst.root = 0;
    inst.goal = 3;
    const auto d = inst.distances_to_goal();
    inst.predictions.assign(d.begin(), d.end());
    const ErrorProfile p = error_profile(inst);
    CHECK(p.e0 == 0);
    CHECK(p.e1 == 0.0);
    CHECK(p.e1_minus == 0.0);
    CHECK(p.einf_plus == 0.0);
    CHECK(p.eps_max == 0.0);
}

TEST_CASE("error profile of the adversarial P3 instance") {
    const P3Pair pair = gen_lb_p3(5.0);
    const ErrorProfile worst = error_profile(pair.worst);
    CHECK(worst.e1_minus == 10.0);
    CHECK(worst.einf_plus == 0.0);
    CHECK(worst.e1 == 10.0);
    CHECK(worst.e0 == 1);
    // symmetric twin: the benign placement has the same profile shape
    const ErrorProfile benign = error_profile(pair.benign);
    CHECK(benign.e1_minus == 10.0);
    CHECK(benign.einf_plus == 0.0);
}

TEST_CASE("error profile of the adversarial star instance") {
    const SearchInstance inst = gen_lb_star(5, 4.0);
    const ErrorProfile p = error_profile(inst);
    CHECK(p.einf_plus == 4.0);
    CHECK(p.e1 == 4.0);
    CHECK(p.e0 == 1);
    CHECK(p.eps_max == kInf);  // f(goal) != 0
}

TEST_CASE("absolute error generator hits the requested l1 norm") {
    const std::vector<double> d{0.0, 1.0, 2.0, 3.0, 4.0};

    SECTION("zero error returns the distances themselves") {
        CHECK(gen_absolute_error(d, 0.0, 42) == Prediction(d.begin(), d.end()));
    }
    SECTION("requested mass is met exactly and reproducibly") {
        for (std::uint64_t seed : {1ULL, 7ULL, 99ULL}) {
            const Prediction f = gen_absolute_error(d, 12.5, seed);
            CHECK(std::abs(l1_against(f, d) - 12.5) < 1e-6);
            CHECK(f == gen_absolute_error(d, 12.5, seed));
        }
        CHECK(gen_absolute_error(d, 12.5, 1) != gen_absolute_error(d, 12.5, 2));
    }
    SECTION("negative requested mass is rejected") {
        CHECK_THROWS_AS(gen_absolute_error(d, -1.0, 3), InputError);
    }
    SECTION("profile of generated predictions reports the requested e1") {
        SearchInstance inst;
        inst.graph = unit_path(5);
        inst.root = 0;
        inst.goal = 4;
        const auto dist = inst.distances_to_goal();
        for (double e1 : {0.5, 3.0, 40.0}) {
            inst.predictions = gen_absolute_error(dist, e1, 11);
            CHECK(std::abs(error_profile(inst).e1 - e1) < 1e-6);
        }
    }
}

TEST_CASE("admissible generator stays below the true distances") {
    const std::vector<double> d{0.0, 5.0, 10.0};

    SECTION("zero error returns the distances themselves") {
        CHECK(gen_admissible_error(d, 0.0, 5) == Prediction(d.begin(), d.end()));
    }
    SECTION("water filling with mass concentrated on the far vertex") {
        // reproduces the adversarial admissible predictions (0, w, 0)
        const Prediction f = admissible_from_raw(d, std::vector<double>{0.0, 0.0, 10.0}, 10.0);
        CHECK(f == Prediction{0.0, 5.0, 0.0});
    }
    SECTION("pointwise caps and exact total mass") {
        Rng seed_rng(17);
        for (int trial = 0; trial < 50; ++trial) {
            const double e1 = seed_rng.next_double() * 15.0;
            const Prediction f = gen_admissible_error(d, e1, seed_rng.next_u64());
            for (std::size_t v = 0; v < d.size(); ++v) {
                CHECK(f[v] <= d[v] + 1e-12);
                CHECK(f[v] >= -1e-12);
            }
            CHECK(std::abs(l1_against(f, d) - e1) < 1e-9);
        }
    }
    SECTION("full saturation is the zero vector") {
        const Prediction f = gen_admissible_error(d, 15.0, 9);
        CHECK(l1_against(f, d) == 15.0);
        for (double x : f) CHECK(x == 0.0);
    }
    SECTION("infeasible mass is rejected") {
        CHECK_THROWS_AS(gen_admissible_error(d, 15.1, 9), InputError);
    }
}

TEST_CASE("relative error generator satisfies the multiplicative model") {
    const std::vector<double> d{0.0, 2.0, 4.0, 6.0, 8.0};

    SECTION("eps = 0 gives perfect predictions") {
        CHECK(gen_relative_error(d, 0.0, 3) == Prediction(d.begin(), d.end()));
    }
    SECTION("every output lies in the [(1-eps) d, (1+eps) d] band and f(g)=0") {
        for (double eps : {0.05, 0.3, 0.9}) {
            for (std::uint64_t seed = 0; seed < 30; ++seed) {
                const Prediction f = gen_relative_error(d, eps, seed);
                CHECK(f[0] == 0.0);
                for (std::size_t v = 1; v < d.size(); ++v) {
                    CHECK(f[v] >= (1.0 - eps) * d[v] - 1e-12);
                    CHECK(f[v] <= (1.0 + eps) * d[v] + 1e-12);
                }
            }
        }
    }
    SECTION("eps outside [0,1) is rejected") {
        CHECK_THROWS_AS(gen_relative_error(d, 1.0, 3), InputError);
        CHECK_THROWS_AS(gen_relative_error(d, -0.1, 3), InputError);
    }
}

TEST_CASE("relative noise matches an independent truncated-normal sampler") {
    // Reference: plain rejection sampling with the standard library's
    // normal distribution, entirely independent of Rng.
    const double eps = 0.2;
    const int samples = 100000;
    std::mt19937_64 ref_rng(12345);
    std::normal_distribution<double> normal(0.0, eps / 2.0);
    double ref_sq = 0.0, ref_mean = 0.0;
    for (int i = 0; i < samples; ++i) {
        double x;
        do { x = normal(ref_rng); } while (x < -eps || x > eps);
        ref_mean += x;
        ref_sq += x * x;
    }
    ref_mean /= samples;
    const double ref_std = std::sqrt(ref_sq / samples - ref_mean * ref_mean);

    const std::vector<double> d(samples, 1.0);  // unit distances isolate eps_v
    const Prediction f = gen_relative_error(d, eps, 777);
    double mean = 0.0, sq = 0.0;
    for (double x : f) {
        mean += x - 1.0;
        sq += (x - 1.0) * (x - 1.0);
    }
    mean /= samples;
    const double sample_std = std::sqrt(sq / samples - mean * mean);

    CHECK(std::abs(sample_std - ref_std) < 0.02 * ref_std);
    CHECK(std::abs(mean) < 3e-3);
}

TEST_CASE("implied error on the three-vertex path") {
    // unit path with ids 0,1,2; goal = 2; perfect predictions (2,1,0)
    const Graph g = unit_path(3);
    const Prediction f{2.0, 1.0, 0.0};
    const ImpliedError phi0 = implied_error(g, f, Phi::phi0);
    CHECK(phi0.values == std::vector<double>{2.0, 3.0, 0.0});
    const ImpliedError phi1 = implied_error(g, f, Phi::phi1);
    CHECK(phi1.values[0] == 4.0);
    CHECK(phi1.values[2] == 0.0);
}

TEST_CASE("implied error at the goal equals the profile metrics") {
    Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + rng.next_int(12);
        InstanceSpec spec;
        spec.family = trial % 2 == 0 ? Family::random_tree : Family::erdos_renyi;
        spec.n = n;
        spec.er_p = 0.4;
        spec.seed = rng.next_u64();
        SearchInstance inst;
        inst.graph = gen_family(spec);
        inst.root = 0;
        inst.goal = n - 1;
        inst.integer_distance = true;
        inst.predictions =
            gen_absolute_error(inst.distances_to_goal(), rng.next_double() * n, rng.next_u64());
        const ErrorProfile p = error_profile(inst);
        const DistanceMatrix dm = all_pairs(inst.graph);
        CHECK(implied_error(dm, inst.predictions, Phi::phi0).values[inst.goal] ==
              static_cast<double>(p.e0));
        CHECK(nearly_equal(implied_error(dm, inst.predictions, Phi::phi1).values[inst.goal],
                           p.e1));
    }
}

TEST_CASE("phi values are nonnegative and phi0 is integer-bounded") {
    Rng rng(43);
    const int n = 10;
    InstanceSpec spec;
    spec.family = Family::random_tree;
    spec.n = n;
    spec.seed = 7;
    const Graph g = gen_family(spec);
    SearchInstance inst;
    inst.graph = g;
    inst.root = 0;
    inst.goal = n - 1;
    inst.predictions = gen_absolute_error(inst.distances_to_goal(), 5.0, 3);
    const ImpliedError phi0 = implied_error(g, inst.predictions, Phi::phi0);
    for (double v : phi0.values) {
        CHECK(v >= 0.0);
        CHECK(v <= n);
        CHECK(v == std::floor(v));
    }
}

TEST_CASE("pairwise phi inequalities on random unweighted instances") {
    Rng rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + rng.next_int(15);
        InstanceSpec spec;
        spec.family = trial % 2 == 0 ? Family::random_tree : Family::erdos_renyi;
        spec.n = n;
        spec.er_p = 0.35;
        spec.seed = rng.next_u64();
        const Graph g = gen_family(spec);
        std::vector<double> d_goal = dijkstra(g, n - 1);
        const Prediction f = gen_absolute_error(d_goal, rng.next_double() * 2 * n, rng.next_u64());
        const DistanceMatrix dm = all_pairs(g);
        const ImpliedError phi0 = implied_error(dm, f, Phi::phi0);
        const ImpliedError phi1 = implied_error(dm, f, Phi::phi1);
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = u + 1; v < n; ++v) {
                CHECK(leq_tol(dm(u, v), phi0.values[u] + phi0.values[v]));
                double strengthened = 2.0 * dm(u, v);
                for (VertexId w = 0; w < n; ++w)
                    if (w != u && w != v) strengthened += std::abs(dm(u, w) - dm(v, w));
                CHECK(leq_tol(strengthened, phi1.values[u] + phi1.values[v]));
            }
    }
}

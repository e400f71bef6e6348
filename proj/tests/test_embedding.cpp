#include <numeric>

#include <catch2/catch_amalgamated.hpp>

#include "predsearch/embedding.hpp"
#include "predsearch/families.hpp"
#include "predsearch/rng.hpp"

using namespace predsearch;

namespace {

Graph unit_path(int n) {
    Graph g(n, false);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, 1.0);
    return g;
}

Graph scaled_path(int n, double scale) {
    Graph g(n, false);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, scale);
    return g;
}

// center 0 with leaves 1..n-1
Graph unit_star(int n) {
    Graph g(n, false);
    for (int leaf = 1; leaf < n; ++leaf) g.add_edge(0, leaf, 1.0);
    return g;
}

}  // namespace

TEST_CASE("identity embedding is an isometry") {
    const Graph p = unit_path(5);
    std::vector<VertexId> id(5);
    std::iota(id.begin(), id.end(), 0);
    const DistortionReport r = distortion(Embedding{p, p, id});
    CHECK(r.lip_forward == 1.0);
    CHECK(r.lip_inverse == 1.0);
    CHECK(r.distortion == 1.0);
}

TEST_CASE("distortion is scale invariant") {
    const Graph p = unit_path(6);
    const Graph scaled = scaled_path(6, 3.5);
    std::vector<VertexId> id(6);
    std::iota(id.begin(), id.end(), 0);
    const DistortionReport r = distortion(Embedding{p, scaled, id});
    CHECK(nearly_equal(r.distortion, 1.0));
    CHECK(nearly_equal(r.lip_forward, 3.5));
    CHECK(nearly_equal(r.lip_inverse, 1.0 / 3.5));
}

TEST_CASE("star into path distortion from the all-pairs ratio table") {
    // star center c=0, leaves a=1, b=2, d=3; path a-c-b-d
    const Graph source = unit_star(4);
    const Graph path = unit_path(4);
    // a -> position 0, c -> 1, b -> 2, d -> 3
    const std::vector<VertexId> map{1, 0, 2, 3};
    const DistortionReport r = distortion(Embedding{source, path, map});
    CHECK(r.lip_forward == 2.0);
    CHECK(r.lip_inverse == 2.0);
    CHECK(r.distortion == 4.0);
}

TEST_CASE("embedding validation rejects bad maps") {
    const Graph p = unit_path(3);
    CHECK_THROWS_AS(distortion(Embedding{p, p, {0, 0, 1}}), InputError);  // not injective
    CHECK_THROWS_AS(distortion(Embedding{p, p, {0, 1}}), InputError);     // not total
    CHECK_THROWS_AS(distortion(Embedding{p, p, {0, 1, 7}}), InputError);  // bad id
}

TEST_CASE("distortion of random embeddings is at least 1") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + rng.next_int(7);
        InstanceSpec spec;
        spec.family = Family::random_tree;
        spec.n = n;
        spec.seed = rng.next_u64();
        const Graph source = gen_family(spec);
        const Graph target = unit_path(n + 2);
        std::vector<VertexId> map(n + 2);
        std::iota(map.begin(), map.end(), 0);
        for (int k = n + 1; k > 0; --k) std::swap(map[k], map[rng.next_int(k + 1)]);
        map.resize(n);
        const DistortionReport r = distortion(Embedding{source, target, map});
        CHECK(r.distortion >= 1.0 - kRelTol);
        CHECK(nearly_equal(r.distortion, r.lip_forward * r.lip_inverse));
    }
}

TEST_CASE("doubling constants on small canonical graphs") {
    // single vertex
    CHECK(doubling_constant_upper(Graph(1, false)) == 1);
    CHECK(doubling_constant_exact(Graph(1, false)) == 1);

    // Unit paths: a radius-1 ball has three vertices and half-radius balls
    // centered at vertices are singletons, so the constant is 3.
    CHECK(doubling_constant_exact(unit_path(6)) == 3);
    CHECK(doubling_constant_upper(unit_path(10)) == 3);

    // star K_{1,4}: the radius-1 ball at the center needs n singleton covers
    const int star_exact = doubling_constant_exact(unit_star(5));
    CHECK(star_exact <= 5);
    CHECK(star_exact == 5);
}

TEST_CASE("doubling upper bound dominates the exact constant") {
    Rng rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + rng.next_int(9);
        Graph g(n, false);
        for (int v = 1; v < n; ++v) g.add_edge(rng.next_int(v), v, 1.0 + rng.next_int(3));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.next_double() < 0.2) g.add_edge(u, v, 1.0 + rng.next_int(3));
        CHECK(doubling_constant_upper(g) >= doubling_constant_exact(g));
    }
}

TEST_CASE("doubling constant of the planning lower-bound tree") {
    // root ball of radius W+2 decomposes into one central ball plus one
    // singleton per pendant: Delta(Delta-1) + 1 balls.
    const SearchInstance inst = gen_lb_planning_tree(3, 4.0);
    const int lambda = doubling_constant_exact(inst.graph);
    CHECK(lambda == 3 * 2 + 1);
    CHECK(doubling_constant_upper(inst.graph) >= lambda);
}

TEST_CASE("doubling exact enforces its cap") {
    CHECK_THROWS_AS(doubling_constant_exact(unit_path(17)), CapacityError);
}

TEST_CASE("tour transfer inequality") {
    const Graph p = unit_path(4);
    std::vector<VertexId> id(4);
    std::iota(id.begin(), id.end(), 0);

    SECTION("identity embedding gives equality") {
        const TourTransfer t =
            tour_transfer_check(Embedding{p, p, id}, std::vector<VertexId>{0, 2, 3});
        CHECK(t.lhs == t.rhs);
        CHECK(t.holds);
    }
    SECTION("singletons cost nothing") {
        const TourTransfer t = tour_transfer_check(Embedding{p, p, id}, std::vector<VertexId>{2});
        CHECK(t.lhs == 0.0);
        CHECK(t.rhs == 0.0);
        CHECK(t.holds);
    }
    SECTION("star into path") {
        const Graph source = unit_star(4);
        const std::vector<VertexId> map{1, 0, 2, 3};
        const TourTransfer t =
            tour_transfer_check(Embedding{source, p, map}, std::vector<VertexId>{1, 2, 3});
        CHECK(t.holds);
        CHECK(t.lhs == 4.0);
        CHECK(t.rhs == 8.0);
    }
}

TEST_CASE("tour transfer holds on randomized embeddings and subsets") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + rng.next_int(7);
        const int m = n + rng.next_int(4);
        Graph source(n, false), target(m, false);
        for (int v = 1; v < n; ++v)
            source.add_edge(rng.next_int(v), v, 0.25 + rng.next_double() * 2.0);
        for (int v = 1; v < m; ++v)
            target.add_edge(rng.next_int(v), v, 0.25 + rng.next_double() * 2.0);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.next_double() < 0.25)
                    source.add_edge(u, v, 0.25 + rng.next_double() * 2.0);
        std::vector<VertexId> map(m);
        std::iota(map.begin(), map.end(), 0);
        for (int k = m - 1; k > 0; --k) std::swap(map[k], map[rng.next_int(k + 1)]);
        map.resize(n);
        std::vector<VertexId> subset;
        for (VertexId v = 0; v < n; ++v)
            if (rng.next_double() < 0.5) subset.push_back(v);
        if (subset.empty()) subset.push_back(0);
        const TourTransfer t = tour_transfer_check(Embedding{source, target, map}, subset);
        CHECK(t.holds);
    }
}

TEST_CASE("path-embedding distortion bounds the doubling constant") {
    Rng rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + rng.next_int(10);
        Graph g(n, false);
        for (int v = 1; v < n; ++v) g.add_edge(rng.next_int(v), v, 1.0);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.next_double() < 0.25) g.add_edge(u, v, 1.0);
        const Graph path = unit_path(n);
        std::vector<VertexId> map(n);
        std::iota(map.begin(), map.end(), 0);
        if (trial % 2 == 0)
            for (int k = n - 1; k > 0; --k) std::swap(map[k], map[rng.next_int(k + 1)]);
        const double rho = distortion(Embedding{g, path, map}).distortion;
        const int lambda = doubling_constant_exact(g);
        CHECK(lambda <= static_cast<int>(std::ceil(8.0 * rho - kRelTol)));
    }
}

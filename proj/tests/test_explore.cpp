#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "predsearch/explore.hpp"
#include "predsearch/families.hpp"
#include "predsearch/prediction.hpp"

using namespace predsearch;

namespace {

Graph unit_path(int n) {
    Graph g(n, false);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, 1.0);
    return g;
}

SearchInstance random_tree_instance(int n, std::uint64_t seed, double e1 = 0.0) {
    InstanceSpec spec;
    spec.family = Family::random_tree;
    spec.n = n;
    spec.seed = derive_seed(seed, 0, 0);
    SearchInstance inst;
    inst.graph = gen_family(spec);
    Rng rng(derive_seed(seed, 1, 0));
    inst.root = rng.next_int(n);
    inst.goal = rng.next_int(n - 1);
    if (inst.goal >= inst.root) ++inst.goal;
    inst.integer_distance = true;
    inst.predictions = gen_absolute_error(inst.distances_to_goal(), e1, derive_seed(seed, 2, 0));
    return inst;
}

void check_trace_invariants(const SearchInstance& inst, const SearchTrace& trace) {
    REQUIRE(!trace.visits.empty());
    CHECK(trace.visits.front() == inst.root);
    CHECK(trace.visits.back() == inst.goal);
    std::set<VertexId> distinct(trace.visits.begin(), trace.visits.end());
    CHECK(distinct.size() == trace.visits.size());
    double alg = 0.0;
    for (double c : trace.step_costs) alg += c;
    CHECK(nearly_equal(alg, trace.alg));
    double progress = 0.0;
    for (double d : trace.deltas) progress += d;
    CHECK(nearly_equal(progress, trace.opt));
    CHECK(trace.alg >= trace.opt - kRelTol);  // ALG >= OPT always
    CHECK(trace.step_costs.size() + 1 == trace.visits.size());
}

/// Replays a trace against a fresh environment: every move must target a
/// frontier vertex and cost exactly the observed distance at decision time.
void check_protocol_legality(const SearchInstance& inst, const SearchTrace& trace) {
    ObservedState state(inst.graph);
    state.reveal(inst.root, inst.graph);
    for (std::size_t i = 1; i < trace.visits.size(); ++i) {
        const VertexId v = trace.visits[i];
        REQUIRE(state.frontier().contains(v));
        const auto dist = state.observed_distances(trace.visits[i - 1]);
        CHECK(nearly_equal(dist[v], trace.step_costs[i - 1]));
        state.reveal(v, inst.graph);
    }
}

}  // namespace

TEST_CASE("reveal exposes the external vertex boundary") {
    SECTION("star root sees all leaves") {
        const SearchInstance star = gen_lb_star(5, 4.0);
        ObservedState state(star.graph);
        state.reveal(0, star.graph);
        CHECK(state.frontier() == std::set<VertexId>{1, 2, 3, 4});
    }
    SECTION("path frontier advances one vertex at a time") {
        const Graph p = unit_path(3);
        ObservedState state(p);
        state.reveal(0, p);
        CHECK(state.frontier() == std::set<VertexId>{1});
        state.reveal(1, p);
        CHECK(state.frontier() == std::set<VertexId>{2});
    }
    SECTION("planning tree root does not see grandchild edges") {
        const SearchInstance inst = gen_lb_planning_tree(3, 4.0);
        ObservedState state(inst.graph);
        state.reveal(0, inst.graph);
        CHECK(state.frontier() == std::set<VertexId>{1, 2, 3});
        CHECK(state.observed_edges().size() == 3);  // only the root's edges
    }
    SECTION("moving to a non-frontier vertex is a protocol violation") {
        const Graph p = unit_path(3);
        ObservedState state(p);
        state.reveal(0, p);
        CHECK_THROWS_AS(state.reveal(2, p), ProtocolViolation);
        // the pure flavor leaves the original untouched
        const ObservedState next = reveal(state, 1, p);
        CHECK(next.visit_order().size() == 2);
        CHECK(state.visit_order().size() == 1);
    }
}

TEST_CASE("greedy with perfect predictions walks a shortest path") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SearchInstance inst = random_tree_instance(30, seed);
        const SearchTrace trace = run_greedy(inst);
        CHECK(nearly_equal(trace.alg, trace.opt));
        check_trace_invariants(inst, trace);
        check_protocol_legality(inst, trace);
    }
}

TEST_CASE("greedy realizes the adversarial P3 cost") {
    const P3Pair pair = gen_lb_p3(5.0);
    const SearchTrace worst = run_greedy(pair.worst);
    CHECK(worst.visits == std::vector<VertexId>{1, 0, 2});
    CHECK(worst.step_costs == std::vector<double>{5.0, 10.0});
    CHECK(worst.alg == 15.0);
    CHECK(worst.opt == 5.0);
    // alg = opt + E1-
    CHECK(worst.alg == worst.opt + error_profile(pair.worst).e1_minus);

    const SearchTrace benign = run_greedy(pair.benign);
    CHECK(benign.alg == 5.0);
}

TEST_CASE("greedy realizes the adversarial star cost") {
    const SearchInstance inst = gen_lb_star(5, 4.0);
    const SearchTrace trace = run_greedy(inst);
    CHECK(trace.visits == std::vector<VertexId>{0, 1, 2, 3, 4});
    CHECK(trace.step_costs == std::vector<double>{2.0, 4.0, 4.0, 4.0});
    CHECK(trace.alg == 14.0);
    CHECK(trace.alg == trace.opt + (5 - 2) * error_profile(inst).einf_plus);
}

TEST_CASE("greedy on directed instances follows edge orientation") {
    Graph g(3, true);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    g.add_edge(2, 0, 1.0);
    SearchInstance inst;
    inst.graph = g;
    inst.root = 0;
    inst.goal = 2;
    const auto d = inst.distances_to_goal();
    inst.predictions.assign(d.begin(), d.end());
    const SearchTrace trace = run_greedy(inst);
    CHECK(trace.visits == std::vector<VertexId>{0, 1, 2});
    CHECK(trace.alg == 2.0);
}

TEST_CASE("greedy satisfies the absolute-error guarantee on random instances") {
    Rng rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const SearchInstance inst =
            random_tree_instance(40, rng.next_u64(), rng.next_double() * 60.0);
        const ErrorProfile p = error_profile(inst);
        const SearchTrace trace = run_greedy(inst);
        check_trace_invariants(inst, trace);
        check_protocol_legality(inst, trace);
        CHECK(leq_tol(trace.alg,
                      trace.opt + p.e1_minus + inst.graph.num_vertices() * p.einf_plus));
    }
}

TEST_CASE("root equal to goal is the trivial trace") {
    SearchInstance inst;
    inst.graph = unit_path(3);
    inst.root = 1;
    inst.goal = 1;
    inst.predictions = {1.0, 0.0, 1.0};
    const SearchTrace trace = run_greedy(inst);
    CHECK(trace.alg == 0.0);
    CHECK(trace.visits == std::vector<VertexId>{1});
}

TEST_CASE("disconnected instances are rejected up front") {
    SearchInstance inst;
    Graph g(3, false);
    g.add_edge(0, 1, 1.0);
    inst.graph = g;
    inst.root = 0;
    inst.goal = 2;
    inst.predictions = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(run_greedy(inst), InputError);
}

TEST_CASE("pruned search with known eps") {
    SECTION("perfect predictions on a tree reach the goal optimally") {
        for (std::uint64_t seed = 100; seed < 110; ++seed) {
            SearchInstance inst = random_tree_instance(25, seed);
            inst.predictions = gen_relative_error(inst.distances_to_goal(), 1e-12, seed);
            const SearchTrace trace = run_pruned_known_eps(inst, 0.1);
            CHECK(nearly_equal(trace.alg, trace.opt));
        }
    }
    SECTION("the relative star instance costs exactly ratio 2.2") {
        const SearchInstance inst = gen_lb_relative_star(6, 0.2);
        const SearchTrace trace = run_pruned_known_eps(inst, 0.2);
        CHECK(nearly_equal(trace.alg, 11.0));
        CHECK(trace.opt == 5.0);
        CHECK(nearly_equal(trace.alg / trace.opt, 2.2));
        // every visited vertex stays inside the lemma radius
        const std::vector<double> d_root = dijkstra(inst.graph, inst.root);
        for (VertexId v : trace.visits)
            CHECK(leq_tol(d_root[v], (1.0 + 0.2) / (1.0 - 0.2) * trace.opt));
    }
    SECTION("predictions breaking the model raise a violation") {
        SearchInstance inst;
        inst.graph = unit_path(3);
        inst.root = 0;
        inst.goal = 2;
        inst.predictions = {0.05, 5.0, 0.0};  // f(r) far below (1-eps) d(r,g)
        CHECK_THROWS_AS(run_pruned_known_eps(inst, 0.2), ModelViolation);
    }
    SECTION("eps outside (0,1) is rejected") {
        const SearchInstance inst = gen_lb_relative_star(6, 0.2);
        CHECK_THROWS_AS(run_pruned_known_eps(inst, 0.0), InputError);
        CHECK_THROWS_AS(run_pruned_known_eps(inst, 1.0), InputError);
    }
}

TEST_CASE("beta-weighted search") {
    SECTION("beta = 1 reproduces the greedy trace") {
        Rng rng(59);
        for (int trial = 0; trial < 15; ++trial) {
            const SearchInstance inst =
                random_tree_instance(30, rng.next_u64(), rng.next_double() * 30.0);
            CHECK(run_beta_weighted(inst, 1.0).visits == run_greedy(inst).visits);
        }
    }
    SECTION("perfect predictions on a tree cost opt") {
        for (std::uint64_t seed = 200; seed < 210; ++seed) {
            const SearchInstance inst = random_tree_instance(25, seed);
            const SearchTrace trace = run_beta_weighted(inst, 2.0 / 3.0);
            CHECK(nearly_equal(trace.alg, trace.opt));
            check_trace_invariants(inst, trace);
        }
    }
    SECTION("visited vertices respect the radius lemma under relative noise") {
        Rng rng(61);
        for (int trial = 0; trial < 15; ++trial) {
            const double eps = 0.05 + rng.next_double() * 0.2;  // < 1/3
            SearchInstance inst = random_tree_instance(40, rng.next_u64());
            inst.predictions = gen_relative_error(inst.distances_to_goal(), eps, rng.next_u64());
            const SearchTrace trace = run_beta_weighted(inst, 2.0 / 3.0);
            check_trace_invariants(inst, trace);
            check_protocol_legality(inst, trace);
            const std::vector<double> d_goal = dijkstra(inst.graph, inst.goal);
            const double radius = (1.0 + eps + 2.0 / 3.0) / (1.0 - (eps + 2.0 / 3.0)) * trace.opt;
            for (std::size_t i = 1; i < trace.visits.size(); ++i)
                CHECK(leq_tol(d_goal[trace.visits[i]], radius));
        }
    }
    SECTION("beta outside (0,1] is rejected") {
        const SearchInstance inst = random_tree_instance(10, 1);
        CHECK_THROWS_AS(run_beta_weighted(inst, 0.0), InputError);
        CHECK_THROWS_AS(run_beta_weighted(inst, 1.5), InputError);
    }
}

TEST_CASE("smallest prediction baseline") {
    SECTION("perfect predictions on a path") {
        SearchInstance inst;
        inst.graph = unit_path(5);
        inst.root = 0;
        inst.goal = 4;
        const auto d = inst.distances_to_goal();
        inst.predictions.assign(d.begin(), d.end());
        const SearchTrace trace = run_smallest_prediction(inst);
        CHECK(nearly_equal(trace.alg, trace.opt));
    }
    SECTION("P3 adversarial instance costs the same as greedy") {
        const P3Pair pair = gen_lb_p3(5.0);
        const SearchTrace trace = run_smallest_prediction(pair.worst);
        CHECK(trace.alg == 15.0);
    }
    SECTION("protocol legality on random noisy trees") {
        Rng rng(67);
        for (int trial = 0; trial < 10; ++trial) {
            const SearchInstance inst =
                random_tree_instance(30, rng.next_u64(), rng.next_double() * 40.0);
            const SearchTrace trace = run_smallest_prediction(inst);
            check_trace_invariants(inst, trace);
            check_protocol_legality(inst, trace);
        }
    }
}

TEST_CASE("A* expansion-order baseline") {
    SECTION("perfect predictions on a path") {
        SearchInstance inst;
        inst.graph = unit_path(5);
        inst.root = 1;
        inst.goal = 4;
        const auto d = inst.distances_to_goal();
        inst.predictions.assign(d.begin(), d.end());
        const SearchTrace trace = run_astar_order(inst);
        CHECK(nearly_equal(trace.alg, trace.opt));
        CHECK(trace.visits.back() == inst.goal);
    }
    SECTION("goal is always the last expansion") {
        Rng rng(71);
        for (int trial = 0; trial < 15; ++trial) {
            const SearchInstance inst =
                random_tree_instance(30, rng.next_u64(), rng.next_double() * 40.0);
            const SearchTrace trace = run_astar_order(inst);
            CHECK(trace.visits.back() == inst.goal);
            CHECK(trace.alg >= trace.opt - kRelTol);
            // expansions are unique
            std::set<VertexId> distinct(trace.visits.begin(), trace.visits.end());
            CHECK(distinct.size() == trace.visits.size());
        }
    }
}

TEST_CASE("observed distances equal true distances on trees") {
    Rng rng(73);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 3 + rng.next_int(25);
        const SearchInstance inst = random_tree_instance(n, rng.next_u64());
        const DistanceMatrix dm = all_pairs(inst.graph);
        ObservedState state(inst.graph);
        state.reveal(inst.root, inst.graph);
        // reveal a random legal sequence
        while (!state.frontier().empty()) {
            std::vector<VertexId> frontier(state.frontier().begin(), state.frontier().end());
            state.reveal(frontier[rng.next_int(static_cast<int>(frontier.size()))], inst.graph);
            std::vector<VertexId> observed = state.visit_order();
            for (VertexId v : state.frontier()) observed.push_back(v);
            const VertexId from = observed[rng.next_int(static_cast<int>(observed.size()))];
            const auto obs = state.observed_distances(from);
            for (VertexId v : observed) CHECK(nearly_equal(obs[v], dm(from, v)));
        }
    }
}

TEST_CASE("observed distances only overestimate on general graphs") {
    Rng rng(79);
    for (int trial = 0; trial < 10; ++trial) {
        InstanceSpec spec;
        spec.family = Family::erdos_renyi;
        spec.n = 20;
        spec.er_p = 0.2;
        spec.seed = rng.next_u64();
        const Graph g = gen_family(spec);
        const DistanceMatrix dm = all_pairs(g);
        ObservedState state(g);
        state.reveal(0, g);
        for (int steps = 0; steps < 10 && !state.frontier().empty(); ++steps) {
            std::vector<VertexId> frontier(state.frontier().begin(), state.frontier().end());
            state.reveal(frontier[rng.next_int(static_cast<int>(frontier.size()))], g);
            const auto obs = state.observed_distances(0);
            for (VertexId v = 0; v < 20; ++v)
                if (obs[v] < kInf) CHECK(obs[v] >= dm(0, v) - kRelTol);
        }
    }
}

TEST_CASE("opportunistic reveal walks through frontier vertices") {
    // 0 - 2 - 1 triangle-ish detour: the cheapest known route from 1 to the
    // goal 3 runs through the unvisited frontier vertex 2.
    Graph g(4, false);
    g.add_edge(0, 1, 3.0);
    g.add_edge(0, 2, 1.0);
    g.add_edge(1, 2, 1.0);
    g.add_edge(0, 3, 1.0);
    SearchInstance inst;
    inst.graph = g;
    inst.root = 0;
    inst.goal = 3;
    inst.predictions = {0.0, 0.0, 50.0, 40.0};

    const SearchTrace plain = run_greedy(inst);
    CHECK(plain.visits == std::vector<VertexId>{0, 1, 3});
    CHECK(plain.alg == 6.0);

    ExploreOptions options;
    options.opportunistic_reveal = true;
    const SearchTrace opportunistic = run_greedy(inst, options);
    CHECK(opportunistic.visits == std::vector<VertexId>{0, 1, 2, 3});
    CHECK(nearly_equal(opportunistic.alg, plain.alg));  // same walk, more reveals
    check_trace_invariants(inst, opportunistic);
}

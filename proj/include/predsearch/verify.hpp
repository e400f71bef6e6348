#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "predsearch/embedding.hpp"
#include "predsearch/experiment.hpp"
#include "predsearch/explore.hpp"
#include "predsearch/families.hpp"
#include "predsearch/io.hpp"
#include "predsearch/parallel.hpp"
#include "predsearch/plan.hpp"
#include "predsearch/prediction.hpp"
#include "predsearch/steiner.hpp"
#include "predsearch/tour.hpp"

namespace predsearch {

enum class VerifySuite {
    theorem1,
    corollary1,
    theorem2,
    theorem3,
    phi_inequalities,
    steiner_cardinality,
    planning_paths,
    planning_trees,
    metrics,
    graph_core,
    baselines,
    determinism,
    all,
};

inline const char* suite_name(VerifySuite s) {
    switch (s) {
        case VerifySuite::theorem1: return "theorem1";
        case VerifySuite::corollary1: return "corollary1";
        case VerifySuite::theorem2: return "theorem2";
        case VerifySuite::theorem3: return "theorem3";
        case VerifySuite::phi_inequalities: return "phi-inequalities";
        case VerifySuite::steiner_cardinality: return "steiner-cardinality";
        case VerifySuite::planning_paths: return "planning-paths";
        case VerifySuite::planning_trees: return "planning-trees";
        case VerifySuite::metrics: return "metrics";
        case VerifySuite::graph_core: return "graph-core";
        case VerifySuite::baselines: return "baselines";
        case VerifySuite::determinism: return "determinism";
        case VerifySuite::all: return "all";
    }
    return "?";
}

inline VerifySuite suite_from_name(const std::string& name) {
    for (VerifySuite s :
         {VerifySuite::theorem1, VerifySuite::corollary1, VerifySuite::theorem2,
          VerifySuite::theorem3, VerifySuite::phi_inequalities, VerifySuite::steiner_cardinality,
          VerifySuite::planning_paths, VerifySuite::planning_trees, VerifySuite::metrics,
          VerifySuite::graph_core, VerifySuite::baselines, VerifySuite::determinism,
          VerifySuite::all})
        if (name == suite_name(s)) return s;
    throw InputError("unknown verify suite: " + name);
}

struct VerifyOptions {
    long trials = 0;  // 0 = each suite's published trial count
    std::uint64_t seed = 20240109;
    std::string dump_dir;  // when set, the first counterexample is serialized here
};

struct VerifyReport {
    std::string suite;
    std::string check;
    long trials = 0;
    long violations = 0;
    std::string first_failure;       // human-readable description
    std::string counterexample;      // dump path, when one was written
    bool passed() const { return violations == 0; }
};

namespace verify_detail {

/// One randomized trial: any number of named checks may fail; the
/// offending instance is kept for replay.
struct TrialResult {
    std::vector<std::pair<std::string, std::string>> failures;  // (check, detail)
    std::optional<SearchInstance> instance;
};

class Collector {
public:
    Collector(std::string suite, VerifyOptions options)
        : suite_(std::move(suite)), options_(std::move(options)) {}

    void run(long trials, const std::vector<std::string>& checks,
             const std::function<TrialResult(long)>& trial_fn) {
        struct Slot {
            std::vector<std::pair<std::string, std::string>> failures;
            std::optional<SearchInstance> instance;
        };
        std::vector<Slot> slots(trials);
        parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
            TrialResult r = trial_fn(static_cast<long>(i));
            slots[i].failures = std::move(r.failures);
            slots[i].instance = std::move(r.instance);
        });
        for (const std::string& check : checks) counts_[check] = {trials, 0, "", ""};
        for (long i = 0; i < trials; ++i) {
            for (const auto& [check, detail] : slots[i].failures) {
                auto& entry = counts_[check];
                if (entry.violations == 0) {
                    entry.first_failure = "trial " + std::to_string(i) + ": " + detail;
                    if (!options_.dump_dir.empty() && slots[i].instance) {
                        namespace fs = std::filesystem;
                        fs::create_directories(options_.dump_dir);
                        const std::string path = options_.dump_dir + "/" + suite_ + "_" + check +
                                                 "_counterexample.json";
                        save_instance(*slots[i].instance, path);
                        entry.counterexample = path;
                    }
                }
                ++entry.violations;
            }
        }
    }

    /// Record a non-trial (aggregate) check outcome.
    void record(const std::string& check, long trials, long violations,
                const std::string& detail = "") {
        counts_[check] = {trials, violations, detail, ""};
    }

    std::vector<VerifyReport> reports() const {
        std::vector<VerifyReport> out;
        for (const auto& [check, entry] : counts_) {
            VerifyReport r;
            r.suite = suite_;
            r.check = check;
            r.trials = entry.trials;
            r.violations = entry.violations;
            r.first_failure = entry.first_failure;
            r.counterexample = entry.counterexample;
            out.push_back(std::move(r));
        }
        return out;
    }

private:
    struct Entry {
        long trials = 0;
        long violations = 0;
        std::string first_failure;
        std::string counterexample;
    };
    std::string suite_;
    VerifyOptions options_;
    std::map<std::string, Entry> counts_;
};

inline void expect(TrialResult& r, const SearchInstance& inst, bool ok, const std::string& check,
                   const std::string& detail) {
    if (ok) return;
    r.failures.push_back({check, detail});
    if (!r.instance) r.instance = inst;
}

/// Random tree with integer edge weights in {1, .., max_weight}.
inline SearchInstance random_integer_tree_instance(int n, int max_weight, double e1,
                                                   std::uint64_t seed) {
    InstanceSpec spec;
    spec.family = Family::random_tree;
    spec.n = n;
    spec.seed = derive_seed(seed, 0, 0);
    Graph unit = gen_family(spec);
    Rng rng(derive_seed(seed, 1, 0));
    Graph g(n, false);
    for (const Edge& e : unit.edges())
        g.add_edge(e.u, e.v, max_weight <= 1 ? 1.0 : 1.0 + rng.next_int(max_weight));
    SearchInstance inst;
    inst.graph = std::move(g);
    inst.root = rng.next_int(n);
    inst.goal = n == 1 ? inst.root : rng.next_int(n - 1);
    if (n > 1 && inst.goal >= inst.root) ++inst.goal;
    inst.integer_distance = true;
    inst.predictions = gen_absolute_error(inst.distances_to_goal(), e1, derive_seed(seed, 2, 0));
    return inst;
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// Exploration guarantee suites
// ---------------------------------------------------------------------------

inline std::vector<VerifyReport> verify_theorem1(const VerifyOptions& options) {
    using namespace verify_detail;
    Collector collector("theorem1", options);
    const long trials = options.trials > 0 ? options.trials : 2000;
    const std::vector<Family> families{Family::random_tree, Family::random_lobster,
                                       Family::erdos_renyi, Family::circular_ladder};
    const std::vector<double> grid{25.0, 50.0, 100.0, 200.0};
    for (Family family : families) {
        const std::string check = std::string("alg<=opt+E1-+n*Einf+ [") + family_name(family) + "]";
        collector.run(trials * static_cast<long>(grid.size()), {check}, [&](long i) {
            const double e1 = grid[i % grid.size()];
            const long trial = i / static_cast<long>(grid.size());
            const std::uint64_t seed =
                derive_seed(options.seed, 100 + static_cast<int>(family), trial * 16 + (i % 4));
            TrialResult r;
            const SearchInstance inst = sample_instance(family, 100, 0.1, 0.5, 0.5,
                                                        Regime::absolute, e1, seed);
            const ErrorProfile p = error_profile(inst);
            const SearchTrace trace = run_greedy(inst);
            const double bound = trace.opt + p.e1_minus + inst.graph.num_vertices() * p.einf_plus;
            expect(r, inst, leq_tol(trace.alg, bound), check,
                   "alg=" + format_number(trace.alg) + " bound=" + format_number(bound));
            return r;
        });
    }
    return collector.reports();
}

inline std::vector<VerifyReport> verify_corollary1(const VerifyOptions& options) {
    using namespace verify_detail;
    Collector collector("corollary1", options);
    const long trials = options.trials > 0 ? options.trials : 2000;
    const std::vector<Family> families{Family::random_tree, Family::random_lobster,
                                       Family::erdos_renyi, Family::circular_ladder};
    const std::vector<double> grid{25.0, 50.0, 100.0, 200.0};
    for (Family family : families) {
        const std::string check =
            std::string("admissible: alg<=opt+E1 [") + family_name(family) + "]";
        collector.run(trials * static_cast<long>(grid.size()), {check}, [&](long i) {
            const double e1 = grid[i % grid.size()];
            const long trial = i / static_cast<long>(grid.size());
            const std::uint64_t seed =
                derive_seed(options.seed, 200 + static_cast<int>(family), trial * 16 + (i % 4));
            TrialResult r;
            const SearchInstance inst = sample_instance(family, 100, 0.1, 0.5, 0.5,
                                                        Regime::admissible, e1, seed);
            const ErrorProfile p = error_profile(inst);
            const SearchTrace trace = run_greedy(inst);
            expect(r, inst, leq_tol(trace.alg, trace.opt + p.e1), check,
                   "alg=" + format_number(trace.alg) +
                       " bound=" + format_number(trace.opt + p.e1));
            // the generator postcondition doubles as the admissibility test
            const std::vector<double> d = inst.distances_to_goal();
            bool admissible = true;
            for (std::size_t v = 0; v < d.size(); ++v)
                if (inst.predictions[v] > d[v] + 1e-9 || inst.predictions[v] < -1e-9)
                    admissible = false;
            expect(r, inst, admissible, check, "generator produced inadmissible predictions");
            return r;
        });
    }
    return collector.reports();
}

inline std::vector<VerifyReport> verify_theorem2(const VerifyOptions& options) {
    using namespace verify_detail;
    Collector collector("theorem2", options);
    const long trials = options.trials > 0 ? options.trials : 2000;
    const std::vector<double> grid{0.05, 0.1, 0.2, 0.3};
    const std::vector<std::string> checks{"ratio bound",      "set clause (i)",
                                          "set clause (ii)",  "set clause (iii)",
                                          "set clause (iv)",  "set clause (v)",
                                          "per-step lemma",   "admissible ratio bound"};
    collector.run(trials * static_cast<long>(grid.size()), checks, [&](long i) {
        const double eps = grid[i % grid.size()];
        const long trial = i / static_cast<long>(grid.size());
        const std::uint64_t seed = derive_seed(options.seed, 300, trial * 8 + (i % 4));
        TrialResult r;
        SearchInstance inst =
            sample_instance(Family::random_tree, 100, 0.1, 0.5, 0.5, Regime::relative, eps, seed);
        const int n = inst.graph.num_vertices();
        const SearchTrace trace = run_pruned_known_eps(inst, eps);
        const double opt = trace.opt;
        const double ratio_bound = 1.0 / (1.0 - eps) + 4.0 * n * eps / ((1.0 - eps) * (1.0 - eps));
        expect(r, inst, leq_tol(trace.alg / opt, ratio_bound), "ratio bound",
               "ratio=" + format_number(trace.alg / opt) + " bound=" + format_number(ratio_bound));

        // Lemma clauses over the pruned set, with true tree distances.
        const std::vector<double> d_root = dijkstra(inst.graph, inst.root);
        std::vector<VertexId> pred_to_goal;
        const std::vector<double> d_goal = dijkstra(inst.graph, inst.goal, &pred_to_goal);
        const double radius = inst.predictions[inst.root] / (1.0 - eps);
        std::vector<char> in_s(n, 0);
        for (VertexId v = 0; v < n; ++v) in_s[v] = leq_tol(d_root[v], radius) ? 1 : 0;
        for (VertexId v = 0; v < n; ++v) {
            if (!in_s[v]) {
                expect(r, inst, d_root[v] > opt - kRelTol * std::max(1.0, opt), "set clause (i)",
                       "v=" + std::to_string(v) + " d(v,r)=" + format_number(d_root[v]) +
                           " opt=" + format_number(opt));
            } else {
                expect(r, inst, leq_tol(d_root[v], (1.0 + eps) / (1.0 - eps) * opt),
                       "set clause (ii)", "v=" + std::to_string(v));
                expect(r, inst, leq_tol(d_goal[v], 2.0 / (1.0 - eps) * opt), "set clause (iii)",
                       "v=" + std::to_string(v));
            }
        }
        // pred_to_goal steps toward the goal: chase it to test path containment.
        auto path_in_s = [&](VertexId from) {
            for (VertexId x = from; x != -1; x = pred_to_goal[x])
                if (!in_s[x]) return false;
            return true;
        };
        expect(r, inst, path_in_s(inst.root), "set clause (iv)", "P(r,g) leaves S");
        for (VertexId v = 0; v < n; ++v)
            if (in_s[v] && !path_in_s(v)) {
                expect(r, inst, false, "set clause (v)", "P(v,g) leaves S, v=" + std::to_string(v));
                break;
            }

        for (std::size_t step = 0; step + 1 < trace.visits.size(); ++step) {
            const double lhs = (1.0 - eps) * trace.step_costs[step];
            const double rhs = trace.deltas[step] + 2.0 * eps * d_goal[trace.visits[step + 1]];
            if (!leq_tol(lhs, rhs)) {
                expect(r, inst, false, "per-step lemma",
                       "step " + std::to_string(step) + ": lhs=" + format_number(lhs) +
                           " rhs=" + format_number(rhs));
                break;
            }
        }

        // Admissible variant: clamping to the true distances keeps the
        // relative model valid and makes the predictions decremental.
        SearchInstance clamped = inst;
        for (VertexId v = 0; v < n; ++v)
            clamped.predictions[v] = std::min(clamped.predictions[v], d_goal[v]);
        const SearchTrace adm = run_pruned_known_eps(clamped, eps);
        const double adm_bound = 1.0 + 2.0 * n * eps / (1.0 - eps);
        expect(r, clamped, leq_tol(adm.alg / adm.opt, adm_bound), "admissible ratio bound",
               "ratio=" + format_number(adm.alg / adm.opt) + " bound=" + format_number(adm_bound));
        return r;
    });
    return collector.reports();
}

inline std::vector<VerifyReport> verify_theorem3(const VerifyOptions& options) {
    using namespace verify_detail;
    Collector collector("theorem3", options);
    const long trials = options.trials > 0 ? options.trials : 2000;
    const std::vector<double> grid{0.05, 0.1, 0.2};
    const std::vector<std::string> checks{"ratio bound", "visited radius bound"};
    collector.run(trials * static_cast<long>(grid.size()), checks, [&](long i) {
        const double eps = grid[i % grid.size()];
        const long trial = i / static_cast<long>(grid.size());
        const std::uint64_t seed = derive_seed(options.seed, 400, trial * 8 + (i % 4));
        TrialResult r;
        SearchInstance inst =
            sample_instance(Family::random_tree, 100, 0.1, 0.5, 0.5, Regime::relative, eps, seed);
        const int n = inst.graph.num_vertices();
        const SearchTrace trace = run_beta_weighted(inst, 2.0 / 3.0);
        const double den = 1.0 - 3.0 * eps;
        const double ratio_bound =
            2.0 + 6.0 * eps / den + 6.0 * eps * (5.0 + 3.0 * eps) * n / (den * den);
        expect(r, inst, leq_tol(trace.alg / trace.opt, ratio_bound), "ratio bound",
               "ratio=" + format_number(trace.alg / trace.opt) +
                   " bound=" + format_number(ratio_bound));
        const std::vector<double> d_goal = dijkstra(inst.graph, inst.goal);
        const double radius_bound = (5.0 + 3.0 * eps) / den * trace.opt;
        for (std::size_t k = 1; k < trace.visits.size(); ++k)
            if (!leq_tol(d_goal[trace.visits[k]], radius_bound)) {
                expect(r, inst, false, "visited radius bound",
                       "v=" + std::to_string(trace.visits[k]));
                break;
            }
        return r;
    });
    return collector.reports();
}

// ---------------------------------------------------------------------------
// Prediction / planning suites
// ---------------------------------------------------------------------------

inline std::vector<VerifyReport> verify_phi_inequalities(const VerifyOptions& options) {
    using namespace verify_detail;
    Collector collector("phi-inequalities", options);
    const long trials = options.trials > 0 ? options.trials : 500;
    const std::vector<std::string> checks{"phi0 pairwise", "phi1 pairwise", "phi1 strengthened",
                                          "phi(goal) equals profile"};
    collector.run(trials, checks, [&](long i) {
        const std::uint64_t seed = derive_seed(options.seed, 500, i);
        Rng rng(derive_seed(seed, 9, 0));
        const int n = 4 + rng.next_int(27);  // n <= 30
        InstanceSpec spec;
        spec.family = (i % 2 == 0) ? Family::random_tree : Family::erdos_renyi;
        spec.n = n;
        spec.er_p = 0.3;
        spec.seed = derive_seed(seed, 0, 0);
        TrialResult r;
        SearchInstance inst;
        inst.graph = gen_family(spec);
        inst.root = rng.next_int(n);
        inst.goal = rng.next_int(n - 1);
        if (inst.goal >= inst.root) ++inst.goal;
        inst.integer_distance = true;
        inst.predictions = gen_absolute_error(inst.distances_to_goal(), rng.next_double() * 3 * n,
                                              derive_seed(seed, 2, 0));
        const DistanceMatrix dm = all_pairs(inst.graph);
        const ImpliedError phi0 = implied_error(dm, inst.predictions, Phi::phi0);
        const ImpliedError phi1 = implied_error(dm, inst.predictions, Phi::phi1);
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = u + 1; v < n; ++v) {
                if (!leq_tol(dm(u, v), phi0.values[u] + phi0.values[v])) {
                    expect(r, inst, false, "phi0 pairwise",
                           "(u,v)=(" + std::to_string(u) + "," + std::to_string(v) + ")");
                }
                if (!leq_tol(2.0 * dm(u, v), phi1.values[u] + phi1.values[v])) {
                    expect(r, inst, false, "phi1 pairwise",
                           "(u,v)=(" + std::to_string(u) + "," + std::to_string(v) + ")");
                }
                double strengthened = 2.0 * dm(u, v);
                for (VertexId w = 0; w < n; ++w)
                    if (w != u && w != v) strengthened += std::abs(dm(u, w) - dm(v, w));
                if (!leq_tol(strengthened, phi1.values[u] + phi1.values[v])) {
                    expect(r, inst, false, "phi1 strengthened",
                           "(u,v)=(" + std::to_string(u) + "," + std::to_string(v) + ")");
                }
            }
        const ErrorProfile p = error_profile(inst);
        expect(r, inst,
               phi0.values[inst.goal] == static_cast<double>(p.e0) &&
                   nearly_equal(phi1.values[inst.goal], p.e1),
               "phi(goal) equals profile",
               "phi0(g)=" + format_number(phi0.values[inst.goal]) +
                   " e0=" + std::to_string(p.e0));
        return r;
    });
    return collector.reports();
}

inline std::vector<VerifyReport> verify_steiner_cardinality(const VerifyOptions& options) {
    using namespace verify_detail;
    Collector collector("steiner-cardinality", options);
    const long trials = options.trials > 0 ? options.trials : 500;
    const std::vector<std::string> checks{"|C| <= lambda*Delta", "diam(C) <= lambda",
                                          "diam(C) = diam(sublevel)"};
    collector.run(trials, checks, [&](long i) {
        const std::uint64_t seed = derive_seed(options.seed, 600, i);
        Rng rng(derive_seed(seed, 9, 0));
        const int n = 3 + rng.next_int(38);
        const double e1 = 1.0 + rng.next_double() * 3.0 * n;
        TrialResult r;
        const SearchInstance inst = random_integer_tree_instance(n, 3, e1, seed);
        int max_degree = 0;
        for (VertexId v = 0; v < n; ++v)
            max_degree = std::max(max_degree, static_cast<int>(inst.graph.neighbors(v).size()));
        const DistanceMatrix dm = all_pairs(inst.graph);
        const PlanningTrace trace = run_full_info(inst, Phi::phi1);
        for (const PlanningRound& round : trace.rounds) {
            if (round.sublevel.empty()) continue;
            const double lambda = round.threshold;
            if (!(round.steiner_vertices <= lambda * max_degree + kRelTol)) {
                expect(r, inst, false, "|C| <= lambda*Delta",
                       "|C|=" + std::to_string(round.steiner_vertices) +
                           " lambda=" + format_number(lambda) +
                           " Delta=" + std::to_string(max_degree));
            }
            if (!leq_tol(round.steiner_diameter, lambda)) {
                expect(r, inst, false, "diam(C) <= lambda",
                       "diam=" + format_number(round.steiner_diameter) +
                           " lambda=" + format_number(lambda));
            }
            if (!nearly_equal(round.steiner_diameter, diameter(dm, round.sublevel))) {
                expect(r, inst, false, "diam(C) = diam(sublevel)",
                       "tree diam=" + format_number(round.steiner_diameter));
            }
        }
        return r;
    });
    return collector.reports();
}

inline std::vector<VerifyReport> verify_planning_paths(const VerifyOptions& options) {
    using namespace verify_detail;
    Collector collector("planning-paths", options);
    const long trials = options.trials > 0 ? options.trials : 500;
    const std::vector<std::string> checks{"alg <= opt + 17*E0 + 1", "threshold doubling",
                                          "termination threshold"};
    collector.run(trials, checks, [&](long i) {
        const std::uint64_t seed = derive_seed(options.seed, 700, i);
        Rng rng(seed);
        const int n = 5 + rng.next_int(46);
        Graph g(n, false);
        for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, 1.0);
        TrialResult r;
        SearchInstance inst;
        inst.graph = std::move(g);
        inst.root = rng.next_int(n);
        inst.goal = rng.next_int(n - 1);
        if (inst.goal >= inst.root) ++inst.goal;
        inst.integer_distance = true;
        const std::vector<double> d = inst.distances_to_goal();
        inst.predictions.assign(d.begin(), d.end());
        const int wrong = rng.next_int(std::min(n / 2, 9));
        for (int k = 0; k < wrong; ++k) {
            const VertexId v = rng.next_int(n);
            const double shift = 1.0 + rng.next_int(2 * n);  // integral, stays wrong
            inst.predictions[v] = d[v] + (rng.next_bool() ? shift : -shift);
        }
        const ErrorProfile p = error_profile(inst);
        const PlanningTrace trace = run_full_info(inst, Phi::phi0);
        const double bound = trace.opt + 17.0 * p.e0 + 1.0;
        expect(r, inst, leq_tol(trace.alg, bound), "alg <= opt + 17*E0 + 1",
               "alg=" + format_number(trace.alg) + " bound=" + format_number(bound) +
                   " E0=" + std::to_string(p.e0));
        for (std::size_t k = 0; k < trace.thresholds.size(); ++k)
            if (trace.thresholds[k] != std::ldexp(1.0, static_cast<int>(k))) {
                expect(r, inst, false, "threshold doubling", "round " + std::to_string(k));
                break;
            }
        if (!trace.thresholds.empty()) {
            const double last = trace.thresholds.back();
            expect(r, inst, last < 2.0 * std::max(1.0, trace.phi_goal) + kRelTol,
                   "termination threshold",
                   "last threshold " + format_number(last) + " vs phi(g) " +
                       format_number(trace.phi_goal));
        }
        return r;
    });
    return collector.reports();
}

inline std::vector<VerifyReport> verify_planning_trees(const VerifyOptions& options) {
    using namespace verify_detail;
    Collector collector("planning-trees", options);
    const long trials = options.trials > 0 ? options.trials : 500;
    const std::vector<std::string> checks{"alg <= opt + (Delta/3)(16 E1^2 - 1) + (E1+1)/2"};
    collector.run(trials, checks, [&](long i) {
        const std::uint64_t seed = derive_seed(options.seed, 800, i);
        Rng rng(derive_seed(seed, 9, 0));
        const int n = 3 + rng.next_int(38);
        const double e1 = 1.0 + rng.next_double() * 3.0 * n;
        TrialResult r;
        const SearchInstance inst = random_integer_tree_instance(n, 3, e1, seed);
        int max_degree = 0;
        for (VertexId v = 0; v < n; ++v)
            max_degree = std::max(max_degree, static_cast<int>(inst.graph.neighbors(v).size()));
        const ErrorProfile p = error_profile(inst);
        if (p.e1 < 1.0) return r;  // the lemma assumes E1 >= 1
        const PlanningTrace trace = run_full_info(inst, Phi::phi1);
        const double bound = trace.opt + max_degree / 3.0 * (16.0 * p.e1 * p.e1 - 1.0) +
                             (p.e1 + 1.0) / 2.0;
        expect(r, inst, leq_tol(trace.alg, bound), checks[0],
               "alg=" + format_number(trace.alg) + " bound=" + format_number(bound));
        return r;
    });
    return collector.reports();
}

// ---------------------------------------------------------------------------
// Metric and graph-core oracle suites
// ---------------------------------------------------------------------------

namespace verify_detail {

inline Graph random_connected_graph(int n, double extra_edge_p, bool weighted, Rng& rng) {
    Graph g(n, false);
    for (int v = 1; v < n; ++v) {
        const int parent = rng.next_int(v);
        g.add_edge(parent, v, weighted ? 0.25 + rng.next_double() * 3.0 : 1.0);
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_double() < extra_edge_p)
                g.add_edge(u, v, weighted ? 0.25 + rng.next_double() * 3.0 : 1.0);
    return g;
}

}  // namespace verify_detail

inline std::vector<VerifyReport> verify_metrics(const VerifyOptions& options) {
    using namespace verify_detail;
    Collector collector("metrics", options);

    {  // tour transfer inequality on randomized (embedding, subset) pairs
        const long trials = options.trials > 0 ? options.trials : 1000;
        collector.run(trials, {"tour transfer", "distortion >= 1"}, [&](long i) {
            Rng rng(derive_seed(options.seed, 900, i));
            const int n = 2 + rng.next_int(7);
            const int m = n + rng.next_int(4);
            const Graph source = random_connected_graph(n, 0.3, true, rng);
            const Graph target = random_connected_graph(m, 0.3, true, rng);
            std::vector<VertexId> map(m);
            std::iota(map.begin(), map.end(), 0);
            for (int k = m - 1; k > 0; --k) std::swap(map[k], map[rng.next_int(k + 1)]);
            map.resize(n);
            const Embedding emb{source, target, map};
            std::vector<VertexId> subset;
            for (VertexId v = 0; v < n; ++v)
                if (rng.next_double() < 0.6) subset.push_back(v);
            if (subset.empty()) subset.push_back(rng.next_int(n));
            TrialResult r;
            SearchInstance carrier;  // counterexample carrier for the source graph
            carrier.graph = source;
            carrier.predictions.assign(n, 0.0);
            const TourTransfer t = tour_transfer_check(emb, subset);
            expect(r, carrier, t.holds, "tour transfer",
                   "lhs=" + format_number(t.lhs) + " rhs=" + format_number(t.rhs));
            expect(r, carrier, distortion(emb).distortion >= 1.0 - kRelTol, "distortion >= 1",
                   "");
            return r;
        });
    }

    {  // doubling constant vs path-embedding distortion, exact oracle
        const long trials = options.trials > 0 ? std::min<long>(options.trials, 200) : 200;
        collector.run(trials, {"lambda <= ceil(8 rho)", "upper >= exact"}, [&](long i) {
            Rng rng(derive_seed(options.seed, 901, i));
            const int n = 3 + rng.next_int(10);  // n <= 12
            const Graph g = random_connected_graph(n, 0.25, false, rng);
            Graph path(n, false);
            for (int v = 0; v + 1 < n; ++v) path.add_edge(v, v + 1, 1.0);
            std::vector<VertexId> map(n);
            std::iota(map.begin(), map.end(), 0);
            if (i % 2 == 0)  // alternate identity layout and random permutations
                for (int k = n - 1; k > 0; --k) std::swap(map[k], map[rng.next_int(k + 1)]);
            const Embedding emb{g, path, map};
            const double rho = distortion(emb).distortion;
            const int lambda = doubling_constant_exact(g);
            TrialResult r;
            SearchInstance carrier;
            carrier.graph = g;
            carrier.predictions.assign(n, 0.0);
            expect(r, carrier, lambda <= std::ceil(8.0 * rho - kRelTol) + kRelTol,
                   "lambda <= ceil(8 rho)",
                   "lambda=" + std::to_string(lambda) + " rho=" + format_number(rho));
            expect(r, carrier, doubling_constant_upper(g) >= lambda, "upper >= exact", "");
            return r;
        });
    }

    {  // paths are 2-easily-tourable, against the exact tour oracle
        const long trials = options.trials > 0 ? options.trials : 1000;
        collector.run(trials, {"path tour <= 2*diam"}, [&](long i) {
            Rng rng(derive_seed(options.seed, 902, i));
            const int n = 2 + rng.next_int(39);
            Graph path(n, false);
            for (int v = 0; v + 1 < n; ++v) path.add_edge(v, v + 1, 0.25 + rng.next_double() * 3.0);
            const int k = 1 + rng.next_int(std::min(n, kTourExactCap));
            std::vector<VertexId> subset;
            std::vector<VertexId> ids(n);
            std::iota(ids.begin(), ids.end(), 0);
            for (int j = 0; j < k; ++j) {
                const int pick = rng.next_int(n - j);
                subset.push_back(ids[pick]);
                std::swap(ids[pick], ids[n - j - 1]);
            }
            const DistanceMatrix dm = all_pairs(path);
            TrialResult r;
            SearchInstance carrier;
            carrier.graph = path;
            carrier.predictions.assign(n, 0.0);
            expect(r, carrier, leq_tol(tour_cost(dm, subset), 2.0 * diameter(dm, subset)),
                   "path tour <= 2*diam", "");
            return r;
        });
    }
    return collector.reports();
}

inline std::vector<VerifyReport> verify_graph_core(const VerifyOptions& options) {
    using namespace verify_detail;
    Collector collector("graph-core", options);
    const long trials = options.trials > 0 ? options.trials : 300;

    collector.run(trials, {"triangle inequality"}, [&](long i) {
        Rng rng(derive_seed(options.seed, 1000, i));
        const int n = 3 + rng.next_int(12);
        const Graph g = random_connected_graph(n, 0.3, true, rng);
        const DistanceMatrix dm = all_pairs(g);
        TrialResult r;
        SearchInstance carrier;
        carrier.graph = g;
        carrier.predictions.assign(n, 0.0);
        for (VertexId a = 0; a < n; ++a)
            for (VertexId b = 0; b < n; ++b)
                for (VertexId c = 0; c < n; ++c)
                    if (!leq_tol(dm(a, c), dm(a, b) + dm(b, c))) {
                        expect(r, carrier, false, "triangle inequality",
                               "(a,b,c)=(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                   std::to_string(c) + ")");
                        return r;
                    }
        return r;
    });

    collector.run(trials, {"dijkstra vs simple-path enumeration"}, [&](long i) {
        Rng rng(derive_seed(options.seed, 1001, i));
        const int n = 2 + rng.next_int(7);  // n <= 8
        const Graph g = random_connected_graph(n, 0.4, true, rng);
        const VertexId s = rng.next_int(n);
        const VertexId t = rng.next_int(n);
        // brute force over simple paths
        std::vector<char> used(n, 0);
        double best = (s == t) ? 0.0 : kInf;
        auto dfs = [&](auto&& self, VertexId v, double acc) -> void {
            if (v == t && acc > 0) {
                best = std::min(best, acc);
                return;
            }
            used[v] = 1;
            for (auto [u, w] : g.neighbors(v))
                if (!used[u] && acc + w < best) self(self, u, acc + w);
            used[v] = 0;
        };
        if (s != t) dfs(dfs, s, 0.0);
        TrialResult r;
        SearchInstance carrier;
        carrier.graph = g;
        carrier.predictions.assign(n, 0.0);
        const auto sp = shortest_path(g, s, t);
        expect(r, carrier, nearly_equal(sp.distance, best),
               "dijkstra vs simple-path enumeration",
               "dijkstra=" + format_number(sp.distance) + " brute=" + format_number(best));
        return r;
    });

    collector.run(trials, {"steiner approx <= 2x exact", "approx tree is valid"}, [&](long i) {
        Rng rng(derive_seed(options.seed, 1002, i));
        const int n = 3 + rng.next_int(8);  // n <= 10
        const Graph g = random_connected_graph(n, 0.35, true, rng);
        const int k = 1 + rng.next_int(std::min(n, 5));
        std::vector<VertexId> terms;
        std::vector<VertexId> ids(n);
        std::iota(ids.begin(), ids.end(), 0);
        for (int j = 0; j < k; ++j) {
            const int pick = rng.next_int(n - j);
            terms.push_back(ids[pick]);
            std::swap(ids[pick], ids[n - j - 1]);
        }
        // brute-force minimum Steiner weight: over every vertex superset of
        // the terminals, MST of the induced subgraph.
        double exact = kInf;
        std::uint32_t term_mask = 0;
        for (VertexId t : terms) term_mask |= 1u << t;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if ((mask & term_mask) != term_mask) continue;
            std::vector<Edge> pool;
            for (const Edge& e : g.edges())
                if ((mask >> e.u & 1) && (mask >> e.v & 1)) pool.push_back(e);
            std::sort(pool.begin(), pool.end(),
                      [](const Edge& a, const Edge& b) { return a.weight < b.weight; });
            std::vector<int> dsu(n);
            std::iota(dsu.begin(), dsu.end(), 0);
            auto find = [&](int x) {
                while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
                return x;
            };
            double weight = 0.0;
            int joined = 1;
            const int total = std::popcount(mask);
            for (const Edge& e : pool) {
                if (find(e.u) == find(e.v)) continue;
                dsu[find(e.u)] = find(e.v);
                weight += e.weight;
                ++joined;
            }
            if (joined == total) exact = std::min(exact, weight);
        }
        TrialResult r;
        SearchInstance carrier;
        carrier.graph = g;
        carrier.predictions.assign(n, 0.0);
        const Subtree approx = steiner_tree_approx(g, terms);
        expect(r, carrier, leq_tol(approx.weight, 2.0 * exact), "steiner approx <= 2x exact",
               "approx=" + format_number(approx.weight) + " exact=" + format_number(exact));
        bool valid = approx.edges.size() + 1 == approx.vertices.size();
        for (VertexId t : terms) valid = valid && approx.contains(t);
        if (!approx.vertices.empty() && valid) {
            Graph sub(n, false);
            for (const Edge& e : approx.edges) sub.add_edge(e.u, e.v, e.weight);
            const auto dist = dijkstra(sub, approx.vertices.front());
            for (VertexId v : approx.vertices) valid = valid && dist[v] < kInf;
        }
        expect(r, carrier, valid, "approx tree is valid", "");
        return r;
    });

    collector.run(trials, {"tree tour <= 2x steiner weight"}, [&](long i) {
        Rng rng(derive_seed(options.seed, 1003, i));
        const int n = 2 + rng.next_int(19);
        const Graph g = random_connected_graph(n, 0.0, true, rng);  // a random tree
        const int k = 1 + rng.next_int(std::min(n, 8));
        std::vector<VertexId> subset;
        std::vector<VertexId> ids(n);
        std::iota(ids.begin(), ids.end(), 0);
        for (int j = 0; j < k; ++j) {
            const int pick = rng.next_int(n - j);
            subset.push_back(ids[pick]);
            std::swap(ids[pick], ids[n - j - 1]);
        }
        TrialResult r;
        SearchInstance carrier;
        carrier.graph = g;
        carrier.predictions.assign(n, 0.0);
        const Subtree tree = steiner_tree_exact_on_tree(g, subset);
        expect(r, carrier, leq_tol(tour_cost(g, subset), 2.0 * tree.weight),
               "tree tour <= 2x steiner weight", "");
        return r;
    });
    return collector.reports();
}

// ---------------------------------------------------------------------------
// Statistical baseline comparison and determinism
// ---------------------------------------------------------------------------

inline std::vector<VerifyReport> verify_baselines(const VerifyOptions& options) {
    using namespace verify_detail;
    Collector collector("baselines", options);
    const long trials = options.trials > 0 ? options.trials : 2000;
    const std::vector<double> grid{50.0, 100.0, 200.0};
    for (double e1 : grid) {
        struct Outcome {
            double greedy = 0, smallest = 0, astar = 0;
        };
        std::vector<Outcome> outcomes(trials);
        parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
            const std::uint64_t seed =
                derive_seed(options.seed, 1100 + static_cast<int>(e1), static_cast<long>(i));
            const SearchInstance inst =
                sample_instance(Family::random_tree, 100, 0.1, 0.5, 0.5, Regime::absolute, e1,
                                seed);
            const SearchTrace g = run_greedy(inst);
            outcomes[i].greedy = g.alg - g.opt;
            const SearchTrace s = run_smallest_prediction(inst);
            outcomes[i].smallest = s.alg - s.opt;
            const SearchTrace a = run_astar_order(inst);
            outcomes[i].astar = a.alg - a.opt;
        });
        double mg = 0, ms = 0, ma = 0;
        for (const Outcome& o : outcomes) {
            mg += o.greedy;
            ms += o.smallest;
            ma += o.astar;
        }
        mg /= trials;
        ms /= trials;
        ma /= trials;
        collector.record("greedy <= smallest_prediction [E1=" + format_number(e1) + "]", trials,
                         mg <= ms ? 0 : 1,
                         "greedy=" + format_number(mg) + " smallest=" + format_number(ms));
        collector.record("greedy <= astar_order [E1=" + format_number(e1) + "]", trials,
                         mg <= ma ? 0 : 1,
                         "greedy=" + format_number(mg) + " astar=" + format_number(ma));
    }
    return collector.reports();
}

inline std::vector<VerifyReport> verify_determinism(const VerifyOptions& options) {
    using namespace verify_detail;
    Collector collector("determinism", options);
    ExperimentConfig cfg;
    cfg.families = {Family::random_tree, Family::erdos_renyi};
    cfg.strategies = {Strategy::greedy, Strategy::smallest_prediction};
    cfg.magnitudes = {10.0, 50.0};
    cfg.n = 40;
    cfg.trials = options.trials > 0 ? options.trials : 25;
    cfg.base_seed = options.seed;
    const std::vector<ResultRow> first = run_sweep(cfg);
    const std::vector<ResultRow> second = run_sweep(cfg);
    collector.record("sweep rerun is byte-identical", cfg.trials,
                     rows_to_csv(first) == rows_to_csv(second) ? 0 : 1);
    long inconsistent = 0;
    for (const ResultRow& row : first) {
        if (!row.error.empty() || std::isnan(row.bound_value)) continue;
        ErrorProfile p;
        p.e0 = row.e0;
        p.e1 = row.e1;
        p.e1_minus = row.e1_minus;
        p.einf_plus = row.einf_plus;
        const bool tree_family = row.family == "random_tree" || row.family == "random_lobster";
        const double recomputed =
            applicable_bound(strategy_from_name(row.strategy), regime_from_name(row.regime),
                             tree_family, row.n, row.opt, p, row.magnitude, cfg.beta);
        if (!nearly_equal(recomputed, row.bound_value)) ++inconsistent;
    }
    collector.record("bound_value recomputes from row columns",
                     static_cast<long>(first.size()), inconsistent);
    return collector.reports();
}

inline std::vector<VerifyReport> verify_bounds(VerifySuite suite, const VerifyOptions& options = {}) {
    switch (suite) {
        case VerifySuite::theorem1: return verify_theorem1(options);
        case VerifySuite::corollary1: return verify_corollary1(options);
        case VerifySuite::theorem2: return verify_theorem2(options);
        case VerifySuite::theorem3: return verify_theorem3(options);
        case VerifySuite::phi_inequalities: return verify_phi_inequalities(options);
        case VerifySuite::steiner_cardinality: return verify_steiner_cardinality(options);
        case VerifySuite::planning_paths: return verify_planning_paths(options);
        case VerifySuite::planning_trees: return verify_planning_trees(options);
        case VerifySuite::metrics: return verify_metrics(options);
        case VerifySuite::graph_core: return verify_graph_core(options);
        case VerifySuite::baselines: return verify_baselines(options);
        case VerifySuite::determinism: return verify_determinism(options);
        case VerifySuite::all: {
            std::vector<VerifyReport> out;
            for (VerifySuite s :
                 {VerifySuite::graph_core, VerifySuite::metrics, VerifySuite::phi_inequalities,
                  VerifySuite::theorem1, VerifySuite::corollary1, VerifySuite::theorem2,
                  VerifySuite::theorem3, VerifySuite::steiner_cardinality,
                  VerifySuite::planning_paths, VerifySuite::planning_trees,
                  VerifySuite::baselines, VerifySuite::determinism}) {
                auto part = verify_bounds(s, options);
                out.insert(out.end(), part.begin(), part.end());
            }
            return out;
        }
    }
    throw InputError("unknown verify suite");
}

}  // namespace predsearch

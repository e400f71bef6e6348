// Command-line front end: instance generation, single runs, sweeps,
// bound-verification suites and figure data extraction.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "predsearch/predsearch.hpp"

namespace {

using namespace predsearch;

void write_or_print(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << content;
}

std::vector<ResultRow> rows_from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    std::string header;
    std::getline(in, header);
    if (header != result_csv_header())
        throw ParseError(path + ": unexpected CSV header (not a sweep result file)");
    std::vector<ResultRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        fields.resize(16);
        ResultRow r;
        r.family = fields[0];
        r.n = std::stoi(fields[1]);
        r.strategy = fields[2];
        r.regime = fields[3];
        r.magnitude = std::stod(fields[4]);
        r.seed = std::stoull(fields[5]);
        if (fields[15].rfind("error:", 0) == 0) {
            r.error = fields[15].substr(6);
        } else {
            r.alg = std::stod(fields[6]);
            r.opt = std::stod(fields[7]);
            r.alg_minus_opt = std::stod(fields[8]);
            r.ratio = std::stod(fields[9]);
            r.e0 = std::stoi(fields[10]);
            r.e1 = std::stod(fields[11]);
            r.e1_minus = std::stod(fields[12]);
            r.einf_plus = std::stod(fields[13]);
            if (!fields[14].empty()) {
                r.bound_value = std::stod(fields[14]);
                r.bound_satisfied = std::stoi(fields[15]);
            }
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

int run_gen(const std::string& family, int n, double w, double einf, double eps, int delta,
            double er_p, double p1, double p2, std::uint64_t seed, const std::string& out,
            const std::string& placement) {
    SearchInstance inst;
    if (family == "lb_p3") {
        const P3Pair pair = gen_lb_p3(w);
        inst = (placement == "benign") ? pair.benign : pair.worst;
    } else if (family == "lb_star") {
        inst = gen_lb_star(n, einf);
    } else if (family == "lb_relative_star") {
        inst = gen_lb_relative_star(n, eps);
    } else if (family == "lb_planning_tree") {
        inst = gen_lb_planning_tree(delta, w);
    } else {
        InstanceSpec spec;
        spec.family = family_from_name(family);
        spec.n = n;
        spec.er_p = er_p;
        spec.lobster_p1 = p1;
        spec.lobster_p2 = p2;
        spec.seed = seed;
        inst.graph = gen_family(spec);
        Rng rng(derive_seed(seed, 1, 0));
        inst.root = rng.next_int(n);
        inst.goal = n == 1 ? 0 : rng.next_int(n - 1);
        if (n > 1 && inst.goal >= inst.root) ++inst.goal;
        inst.integer_distance = true;
        const auto d = inst.distances_to_goal();
        inst.predictions.assign(d.begin(), d.end());  // perfect predictions by default
    }
    if (out.empty()) {
        std::cout << instance_to_json(inst).dump(2) << '\n';
    } else {
        save_instance(inst, out);
        std::cerr << "wrote " << out << '\n';
    }
    return 0;
}

int run_single(const std::string& path, const std::string& strategy, double eps, double beta,
               const std::string& phi, bool trace_visits) {
    const SearchInstance inst = load_instance(path);
    if (strategy == "full_info") {
        const PlanningTrace trace =
            run_full_info(inst, phi == "phi0" ? Phi::phi0 : Phi::phi1);
        std::cout << "alg=" << format_number(trace.alg) << " opt=" << format_number(trace.opt)
                  << " rounds=" << trace.rounds.size()
                  << " phi_goal=" << format_number(trace.phi_goal) << '\n';
        if (trace_visits) {
            for (const PlanningRound& round : trace.rounds)
                std::cout << "  threshold=" << format_number(round.threshold)
                          << " |sublevel|=" << round.sublevel.size()
                          << " steiner_weight=" << format_number(round.steiner_weight)
                          << " travel=" << format_number(round.travel_cost) << '\n';
            std::cout << "  visits:";
            for (VertexId v : trace.visits) std::cout << ' ' << v;
            std::cout << '\n';
        }
        return 0;
    }
    SearchTrace trace;
    const Strategy s = strategy_from_name(strategy);
    switch (s) {
        case Strategy::greedy: trace = run_greedy(inst); break;
        case Strategy::pruned_known_eps: trace = run_pruned_known_eps(inst, eps); break;
        case Strategy::beta_weighted: trace = run_beta_weighted(inst, beta); break;
        case Strategy::smallest_prediction: trace = run_smallest_prediction(inst); break;
        case Strategy::astar_order: trace = run_astar_order(inst); break;
    }
    const ErrorProfile p = error_profile(inst);
    std::cout << "alg=" << format_number(trace.alg) << " opt=" << format_number(trace.opt)
              << " ratio=" << format_number(trace.alg / trace.opt) << " e0=" << p.e0
              << " e1=" << format_number(p.e1) << " e1_minus=" << format_number(p.e1_minus)
              << " einf_plus=" << format_number(p.einf_plus) << '\n';
    if (trace_visits) {
        std::cout << "  visits:";
        for (VertexId v : trace.visits) std::cout << ' ' << v;
        std::cout << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph searching with machine-learned distance predictions"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate an instance and write it as JSON");
    std::string gen_family_name = "random_tree";
    int gen_n = 100;
    double gen_w = 5.0, gen_einf = 4.0, gen_eps = 0.2, gen_er_p = 0.1, gen_p1 = 0.5, gen_p2 = 0.5;
    int gen_delta = 3;
    std::uint64_t gen_seed = 1;
    std::string gen_out, gen_placement = "worst";
    gen->add_option("--family", gen_family_name,
                    "random_tree|random_lobster|erdos_renyi|circular_ladder|lb_p3|lb_star|"
                    "lb_relative_star|lb_planning_tree");
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--w", gen_w, "edge weight (lb_p3, lb_planning_tree)");
    gen->add_option("--einf", gen_einf, "max positive error (lb_star)");
    gen->add_option("--eps", gen_eps, "relative error parameter (lb_relative_star)");
    gen->add_option("--delta", gen_delta, "degree parameter (lb_planning_tree)");
    gen->add_option("--er-p", gen_er_p, "Erdos-Renyi edge probability");
    gen->add_option("--lobster-p1", gen_p1, "lobster first-level attachment probability");
    gen->add_option("--lobster-p2", gen_p2, "lobster second-level attachment probability");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--placement", gen_placement, "worst|benign (lb_p3 goal placement)");
    gen->add_option("--out", gen_out, "output path (stdout when omitted)");

    // ---- run ----
    auto* run = app.add_subcommand("run", "run one strategy on a stored instance");
    std::string run_path, run_strategy = "greedy", run_phi = "phi1";
    double run_eps = 0.1, run_beta = 2.0 / 3.0;
    bool run_trace = false;
    run->add_option("--instance", run_path, "instance JSON path")->required();
    run->add_option("--strategy", run_strategy,
                    "greedy|pruned_known_eps|beta_weighted|smallest_prediction|astar_order|"
                    "full_info");
    run->add_option("--eps", run_eps, "eps for pruned_known_eps");
    run->add_option("--beta", run_beta, "beta for beta_weighted");
    run->add_option("--phi", run_phi, "phi0|phi1 for full_info");
    run->add_flag("--trace", run_trace, "print per-round / visit details");

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "run a (family x magnitude x trial) sweep to CSV");
    ExperimentConfig cfg;
    std::string sweep_config, sweep_families, sweep_strategies, sweep_regime, sweep_magnitudes;
    sweep->add_option("--config", sweep_config, "JSON config file (flags override it)");
    sweep->add_option("--families", sweep_families, "comma-separated family list");
    sweep->add_option("--strategies", sweep_strategies, "comma-separated strategy list");
    sweep->add_option("--regime", sweep_regime, "absolute|relative|admissible");
    sweep->add_option("--magnitudes", sweep_magnitudes, "comma-separated E1 or eps grid");
    auto* opt_n = sweep->add_option("--n", cfg.n, "vertex count");
    auto* opt_trials = sweep->add_option("--trials", cfg.trials, "trials per cell");
    auto* opt_seed = sweep->add_option("--seed", cfg.base_seed, "base seed");
    auto* opt_er = sweep->add_option("--er-p", cfg.er_p, "Erdos-Renyi edge probability");
    auto* opt_p1 = sweep->add_option("--lobster-p1", cfg.lobster_p1, "lobster p1");
    auto* opt_p2 = sweep->add_option("--lobster-p2", cfg.lobster_p2, "lobster p2");
    auto* opt_beta = sweep->add_option("--beta", cfg.beta, "beta for beta_weighted");
    std::string sweep_out;
    sweep->add_option("--out", sweep_out, "output CSV path (stdout when omitted)");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run bound-verification suites");
    std::string verify_suite = "all", verify_dump = "verify_failures";
    VerifyOptions vopt;
    verify->add_option("--suite", verify_suite,
                       "theorem1|corollary1|theorem2|theorem3|phi-inequalities|"
                       "steiner-cardinality|planning-paths|planning-trees|metrics|graph-core|"
                       "baselines|determinism|all");
    verify->add_option("--trials", vopt.trials, "override per-suite trial counts (0 = defaults)");
    verify->add_option("--seed", vopt.seed, "base seed");
    verify->add_option("--dump-dir", verify_dump, "directory for counterexample dumps");

    // ---- summarize ----
    auto* summ = app.add_subcommand("summarize", "aggregate a sweep CSV into per-cell summaries");
    std::string summ_in, summ_out;
    summ->add_option("--in", summ_in, "sweep CSV path")->required();
    summ->add_option("--out", summ_out, "output CSV path (stdout when omitted)");

    // ---- plotdata ----
    auto* plot = app.add_subcommand("plotdata", "extract (x, mean, std, series) figure data");
    std::string plot_in, plot_out, plot_figure = "fig2_left";
    plot->add_option("--in", plot_in, "sweep CSV path")->required();
    plot->add_option("--figure", plot_figure,
                     "fig2_left|fig2_right|baseline_comparison|node_scaling");
    plot->add_option("--out", plot_out, "output CSV path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return run_gen(gen_family_name, gen_n, gen_w, gen_einf, gen_eps, gen_delta, gen_er_p,
                           gen_p1, gen_p2, gen_seed, gen_out, gen_placement);
        if (run->parsed())
            return run_single(run_path, run_strategy, run_eps, run_beta, run_phi, run_trace);
        if (sweep->parsed()) {
            ExperimentConfig base = sweep_config.empty() ? ExperimentConfig{} : load_config(sweep_config);
            auto split_list = [](const std::string& csv) {
                std::vector<std::string> out;
                std::stringstream ss(csv);
                std::string item;
                while (std::getline(ss, item, ',')) out.push_back(item);
                return out;
            };
            if (!sweep_families.empty()) {
                base.families.clear();
                for (const auto& f : split_list(sweep_families))
                    base.families.push_back(family_from_name(f));
            }
            if (!sweep_strategies.empty()) {
                base.strategies.clear();
                for (const auto& s : split_list(sweep_strategies))
                    base.strategies.push_back(strategy_from_name(s));
            }
            if (!sweep_regime.empty()) base.regime = regime_from_name(sweep_regime);
            if (!sweep_magnitudes.empty()) {
                base.magnitudes.clear();
                for (const auto& m : split_list(sweep_magnitudes))
                    base.magnitudes.push_back(std::stod(m));
            }
            if (*opt_n) base.n = cfg.n;
            if (*opt_trials) base.trials = cfg.trials;
            if (*opt_seed) base.base_seed = cfg.base_seed;
            if (*opt_er) base.er_p = cfg.er_p;
            if (*opt_p1) base.lobster_p1 = cfg.lobster_p1;
            if (*opt_p2) base.lobster_p2 = cfg.lobster_p2;
            if (*opt_beta) base.beta = cfg.beta;
            if (!sweep_out.empty()) base.output = sweep_out;
            const std::vector<ResultRow> rows = run_sweep(base);
            write_or_print(rows_to_csv(rows), base.output);
            return 0;
        }
        if (verify->parsed()) {
            vopt.dump_dir = verify_dump;
            const auto reports = verify_bounds(suite_from_name(verify_suite), vopt);
            bool any_failed = false;
            for (const VerifyReport& r : reports) {
                std::cout << (r.passed() ? "PASS" : "FAIL") << "  [" << r.suite << "] " << r.check
                          << "  (" << r.violations << "/" << r.trials << " violations)";
                if (!r.passed()) {
                    std::cout << "  first: " << r.first_failure;
                    if (!r.counterexample.empty())
                        std::cout << "  counterexample: " << r.counterexample;
                    any_failed = true;
                }
                std::cout << '\n';
            }
            return any_failed ? 1 : 0;
        }
        if (summ->parsed()) {
            const auto rows = rows_from_csv_file(summ_in);
            write_or_print(summaries_to_csv(summarize(rows)), summ_out);
            return 0;
        }
        if (plot->parsed()) {
            const auto rows = rows_from_csv_file(plot_in);
            write_or_print(emit_plotdata(rows, figure_from_name(plot_figure)), plot_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

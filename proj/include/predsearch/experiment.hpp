#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "predsearch/explore.hpp"
#include "predsearch/families.hpp"
#include "predsearch/io.hpp"
#include "predsearch/parallel.hpp"
#include "predsearch/prediction.hpp"

namespace predsearch {

enum class Strategy { greedy, pruned_known_eps, beta_weighted, smallest_prediction, astar_order };
enum class Regime { absolute, relative, admissible };

inline const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::greedy: return "greedy";
        case Strategy::pruned_known_eps: return "pruned_known_eps";
        case Strategy::beta_weighted: return "beta_weighted";
        case Strategy::smallest_prediction: return "smallest_prediction";
        case Strategy::astar_order: return "astar_order";
    }
    return "?";
}

inline Strategy strategy_from_name(const std::string& name) {
    for (Strategy s : {Strategy::greedy, Strategy::pruned_known_eps, Strategy::beta_weighted,
                       Strategy::smallest_prediction, Strategy::astar_order})
        if (name == strategy_name(s)) return s;
    throw InputError("unknown strategy: " + name);
}

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::absolute: return "absolute";
        case Regime::relative: return "relative";
        case Regime::admissible: return "admissible";
    }
    return "?";
}

inline Regime regime_from_name(const std::string& name) {
    for (Regime r : {Regime::absolute, Regime::relative, Regime::admissible})
        if (name == regime_name(r)) return r;
    throw InputError("unknown error regime: " + name);
}

/// One sweep: families x error magnitudes x trials, running every listed
/// strategy on the same sampled instances. Every (cell, trial) seed is
/// derived from the base seed, so output is reproducible bit for bit.
struct ExperimentConfig {
    std::vector<Family> families{Family::random_tree, Family::random_lobster,
                                 Family::erdos_renyi, Family::circular_ladder};
    std::vector<Strategy> strategies{Strategy::greedy};
    Regime regime = Regime::absolute;
    std::vector<double> magnitudes{25.0, 50.0, 100.0, 200.0};  // E1 grid or eps grid
    int n = 100;
    int trials = 2000;
    std::uint64_t base_seed = 1;
    double er_p = 0.1;
    double lobster_p1 = 0.5;
    double lobster_p2 = 0.5;
    double beta = 2.0 / 3.0;
    std::string output;  // CSV path; empty = stdout

    void validate() const {
        if (families.empty() || strategies.empty() || magnitudes.empty())
            throw InputError("config: families, strategies and magnitudes must be non-empty");
        if (n < 2) throw InputError("config: n must be >= 2");
        if (trials < 1) throw InputError("config: trials must be >= 1");
        for (Family f : families)
            if (f != Family::random_tree && f != Family::random_lobster &&
                f != Family::erdos_renyi && f != Family::circular_ladder)
                throw InputError("config: sweeps run on the four experimental families only");
        for (double m : magnitudes) {
            if (regime == Regime::relative) {
                if (m <= 0.0 || m >= 1.0) throw InputError("config: relative eps outside (0, 1)");
            } else if (m < 0.0) {
                throw InputError("config: negative error magnitude");
            }
        }
        if (regime != Regime::relative)
            for (Strategy s : strategies)
                if (s == Strategy::pruned_known_eps)
                    throw InputError("config: pruned_known_eps needs the relative regime");
    }
};

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    if (j.contains("families")) {
        cfg.families.clear();
        for (const auto& f : j["families"]) cfg.families.push_back(family_from_name(f));
    }
    if (j.contains("strategies")) {
        cfg.strategies.clear();
        for (const auto& s : j["strategies"]) cfg.strategies.push_back(strategy_from_name(s));
    }
    if (j.contains("regime")) cfg.regime = regime_from_name(j["regime"]);
    if (j.contains("magnitudes")) cfg.magnitudes = j["magnitudes"].get<std::vector<double>>();
    cfg.n = j.value("n", cfg.n);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    cfg.er_p = j.value("er_p", cfg.er_p);
    cfg.lobster_p1 = j.value("lobster_p1", cfg.lobster_p1);
    cfg.lobster_p2 = j.value("lobster_p2", cfg.lobster_p2);
    cfg.beta = j.value("beta", cfg.beta);
    cfg.output = j.value("output", cfg.output);
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config " + path + ": " + e.what());
    }
    return config_from_json(j);
}

struct ResultRow {
    std::string family;
    int n = 0;
    std::string strategy;
    std::string regime;
    double magnitude = 0.0;
    std::uint64_t seed = 0;
    double alg = 0.0;
    double opt = 0.0;
    double alg_minus_opt = 0.0;
    double ratio = 0.0;
    int e0 = 0;
    double e1 = 0.0;
    double e1_minus = 0.0;
    double einf_plus = 0.0;
    double bound_value = std::numeric_limits<double>::quiet_NaN();  // NaN: no theorem applies
    int bound_satisfied = -1;                                       // 1/0; -1 when no bound
    std::string error;  // non-empty when the trial failed to generate/run
};

inline std::string result_csv_header() {
    return "family,n,strategy,regime,magnitude,seed,alg,opt,alg_minus_opt,ratio,"
           "e0,e1,e1_minus,einf_plus,bound_value,bound_satisfied";
}

inline std::string to_csv(const ResultRow& r) {
    std::string out;
    out += r.family + ',' + std::to_string(r.n) + ',' + r.strategy + ',' + r.regime + ',';
    out += format_number(r.magnitude) + ',' + std::to_string(r.seed) + ',';
    if (!r.error.empty()) {
        out += ",,,,,,,,,error:" + r.error;
        return out;
    }
    out += format_number(r.alg) + ',' + format_number(r.opt) + ',';
    out += format_number(r.alg_minus_opt) + ',' + format_number(r.ratio) + ',';
    out += std::to_string(r.e0) + ',' + format_number(r.e1) + ',';
    out += format_number(r.e1_minus) + ',' + format_number(r.einf_plus) + ',';
    if (std::isnan(r.bound_value)) {
        out += ",";
    } else {
        out += format_number(r.bound_value) + ',' + std::to_string(r.bound_satisfied);
    }
    return out;
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// The worst-case guarantee matching (strategy, regime) on this
/// instance, recomputed from the row's own error metrics. NaN when no
/// theorem covers the combination.
inline double applicable_bound(Strategy strategy, Regime regime, bool tree_family, int n,
                               double opt, const ErrorProfile& profile, double magnitude,
                               double beta) {
    switch (strategy) {
        case Strategy::greedy:
            // Holds for arbitrary weighted instances; with admissible
            // predictions it reduces to opt + E1.
            return opt + profile.e1_minus + n * profile.einf_plus;
        case Strategy::pruned_known_eps: {
            if (regime != Regime::relative || !tree_family) return kNaN;
            const double eps = magnitude;
            return opt * (1.0 / (1.0 - eps) + 4.0 * n * eps / ((1.0 - eps) * (1.0 - eps)));
        }
        case Strategy::beta_weighted: {
            if (regime != Regime::relative || !tree_family) return kNaN;
            const double eps = magnitude;
            if (eps >= 1.0 / 3.0 || beta != 2.0 / 3.0) return kNaN;
            const double den = 1.0 - 3.0 * eps;
            return opt * (2.0 + 6.0 * eps / den + 6.0 * eps * (5.0 + 3.0 * eps) * n / (den * den));
        }
        default:
            return kNaN;
    }
}

/// Instance sampled for one (family, magnitude, trial) cell. Graph
/// topology is resampled per trial for the stochastic families; root and
/// goal are uniform distinct vertices.
inline SearchInstance sample_instance(Family family, int n, double er_p, double lobster_p1,
                                      double lobster_p2, Regime regime, double magnitude,
                                      std::uint64_t seed) {
    InstanceSpec spec;
    spec.family = family;
    spec.n = n;
    spec.er_p = er_p;
    spec.lobster_p1 = lobster_p1;
    spec.lobster_p2 = lobster_p2;
    spec.seed = derive_seed(seed, 0, 0);
    SearchInstance inst;
    inst.graph = gen_family(spec);
    Rng node_rng(derive_seed(seed, 1, 0));
    inst.root = node_rng.next_int(n);
    inst.goal = node_rng.next_int(n - 1);
    if (inst.goal >= inst.root) ++inst.goal;
    inst.integer_distance = true;  // the four families are unweighted
    const std::vector<double> d = inst.distances_to_goal();
    const std::uint64_t error_seed = derive_seed(seed, 2, 0);
    switch (regime) {
        case Regime::absolute:
            inst.predictions = gen_absolute_error(d, magnitude, error_seed);
            break;
        case Regime::relative:
            inst.predictions = gen_relative_error(d, magnitude, error_seed);
            break;
        case Regime::admissible: {
            const double capacity = std::accumulate(d.begin(), d.end(), 0.0);
            inst.predictions = gen_admissible_error(d, std::min(magnitude, capacity), error_seed);
            break;
        }
    }
    return inst;
}

inline SearchTrace run_strategy(const SearchInstance& inst, Strategy strategy, double magnitude,
                                double beta) {
    switch (strategy) {
        case Strategy::greedy: return run_greedy(inst);
        case Strategy::pruned_known_eps: return run_pruned_known_eps(inst, magnitude);
        case Strategy::beta_weighted: return run_beta_weighted(inst, beta);
        case Strategy::smallest_prediction: return run_smallest_prediction(inst);
        case Strategy::astar_order: return run_astar_order(inst);
    }
    throw InputError("unknown strategy");
}

/// Rows come back in deterministic (family, magnitude, trial, strategy)
/// order no matter how the worker pool schedules trials. Generation
/// failures produce an error row instead of aborting the sweep.
inline std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    struct Cell {
        Family family;
        double magnitude;
    };
    std::vector<Cell> cells;
    for (Family f : cfg.families)
        for (double m : cfg.magnitudes) cells.push_back({f, m});

    const std::size_t per_trial = cfg.strategies.size();
    std::vector<ResultRow> rows(cells.size() * cfg.trials * per_trial);
    parallel_for(cells.size() * cfg.trials, [&](std::size_t task) {
        const std::size_t cell_idx = task / cfg.trials;
        const std::size_t trial = task % cfg.trials;
        const Cell& cell = cells[cell_idx];
        const std::uint64_t seed = derive_seed(cfg.base_seed, cell_idx, trial);
        const bool tree_family =
            cell.family == Family::random_tree || cell.family == Family::random_lobster;

        ResultRow base;
        base.family = family_name(cell.family);
        base.n = cfg.n;
        base.regime = regime_name(cfg.regime);
        base.magnitude = cell.magnitude;
        base.seed = seed;

        SearchInstance inst;
        ErrorProfile profile;
        std::string generation_error;
        try {
            inst = sample_instance(cell.family, cfg.n, cfg.er_p, cfg.lobster_p1, cfg.lobster_p2,
                                   cfg.regime, cell.magnitude, seed);
            profile = error_profile(inst);
        } catch (const std::exception& e) {
            generation_error = e.what();
        }

        for (std::size_t s = 0; s < per_trial; ++s) {
            ResultRow row = base;
            row.strategy = strategy_name(cfg.strategies[s]);
            if (!generation_error.empty()) {
                row.error = generation_error;
            } else {
                try {
                    const SearchTrace trace =
                        run_strategy(inst, cfg.strategies[s], cell.magnitude, cfg.beta);
                    row.alg = trace.alg;
                    row.opt = trace.opt;
                    row.alg_minus_opt = trace.alg - trace.opt;
                    row.ratio = trace.alg / trace.opt;
                    row.e0 = profile.e0;
                    row.e1 = profile.e1;
                    row.e1_minus = profile.e1_minus;
                    row.einf_plus = profile.einf_plus;
                    row.bound_value =
                        applicable_bound(cfg.strategies[s], cfg.regime, tree_family, cfg.n,
                                         trace.opt, profile, cell.magnitude, cfg.beta);
                    if (!std::isnan(row.bound_value))
                        row.bound_satisfied = leq_tol(row.alg, row.bound_value) ? 1 : 0;
                } catch (const std::exception& e) {
                    row.error = e.what();
                }
            }
            rows[task * per_trial + s] = std::move(row);
        }
    });
    return rows;
}

inline std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::string out = result_csv_header() + '\n';
    for (const ResultRow& r : rows) out += to_csv(r) + '\n';
    return out;
}

/// Per-cell aggregates following the reporting conventions of the
/// experiments: mean and standard deviation of alg - opt and of the
/// competitive ratio, plus the mean cost as a percentage of the
/// worst-case absolute-error bound opt + E1- + n E
/// (the summary-table convention).
struct SummaryRow {
    std::string family;
    int n = 0;
    std::string strategy;
    std::string regime;
    double magnitude = 0.0;
    long trials = 0;
    double mean_alg_minus_opt = 0.0;
    double std_alg_minus_opt = 0.0;
    double mean_ratio = 0.0;
    double std_ratio = 0.0;
    double pct_of_bound = 0.0;
    long bound_violations = 0;
    long errors = 0;
};

inline std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
    std::map<std::tuple<std::string, int, std::string, std::string, double>,
             std::vector<const ResultRow*>>
        groups;
    for (const ResultRow& r : rows)
        groups[{r.family, r.n, r.strategy, r.regime, r.magnitude}].push_back(&r);
    std::vector<SummaryRow> out;
    for (const auto& [key, members] : groups) {
        SummaryRow s;
        std::tie(s.family, s.n, s.strategy, s.regime, s.magnitude) = key;
        std::vector<double> diffs, ratios, pcts;
        for (const ResultRow* r : members) {
            if (!r->error.empty()) {
                ++s.errors;
                continue;
            }
            diffs.push_back(r->alg_minus_opt);
            ratios.push_back(r->ratio);
            const double t1 = r->opt + r->e1_minus + r->n * r->einf_plus;
            pcts.push_back(100.0 * r->alg / t1);
            if (r->bound_satisfied == 0) ++s.bound_violations;
        }
        s.trials = static_cast<long>(diffs.size());
        auto mean = [](const std::vector<double>& v) {
            return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
        };
        auto stddev = [&](const std::vector<double>& v, double m) {
            if (v.size() < 2) return 0.0;
            double acc = 0.0;
            for (double x : v) acc += (x - m) * (x - m);
            return std::sqrt(acc / v.size());
        };
        s.mean_alg_minus_opt = mean(diffs);
        s.std_alg_minus_opt = stddev(diffs, s.mean_alg_minus_opt);
        s.mean_ratio = mean(ratios);
        s.std_ratio = stddev(ratios, s.mean_ratio);
        s.pct_of_bound = mean(pcts);
        out.push_back(std::move(s));
    }
    return out;
}

inline std::string summaries_to_csv(const std::vector<SummaryRow>& rows) {
    std::string out =
        "family,n,strategy,regime,magnitude,trials,mean_alg_minus_opt,std_alg_minus_opt,"
        "mean_ratio,std_ratio,pct_of_bound,bound_violations,errors\n";
    for (const SummaryRow& s : rows) {
        out += s.family + ',' + std::to_string(s.n) + ',' + s.strategy + ',' + s.regime + ',';
        out += format_number(s.magnitude) + ',' + std::to_string(s.trials) + ',';
        out += format_number(s.mean_alg_minus_opt) + ',' + format_number(s.std_alg_minus_opt) + ',';
        out += format_number(s.mean_ratio) + ',' + format_number(s.std_ratio) + ',';
        out += format_number(s.pct_of_bound) + ',' + std::to_string(s.bound_violations) + ',';
        out += std::to_string(s.errors) + '\n';
    }
    return out;
}

enum class Figure { fig2_left, fig2_right, baseline_comparison, node_scaling };

inline Figure figure_from_name(const std::string& name) {
    if (name == "fig2_left") return Figure::fig2_left;
    if (name == "fig2_right") return Figure::fig2_right;
    if (name == "baseline_comparison") return Figure::baseline_comparison;
    if (name == "node_scaling") return Figure::node_scaling;
    throw InputError("unknown figure: " + name);
}

/// (x, mean, std, series) rows tailored to one of the reproduced figures;
/// no plotting dependency, any tool can consume the CSV.
inline std::string emit_plotdata(const std::vector<ResultRow>& rows, Figure figure) {
    std::map<std::pair<std::string, double>, std::vector<double>> groups;
    for (const ResultRow& r : rows) {
        if (!r.error.empty()) continue;
        switch (figure) {
            case Figure::fig2_left:
                if (r.strategy == "greedy" && r.regime == "absolute")
                    groups[{r.family, r.magnitude}].push_back(r.alg_minus_opt);
                break;
            case Figure::fig2_right:
                if (r.strategy == "beta_weighted" && r.regime == "relative")
                    groups[{r.family, r.magnitude}].push_back(r.ratio);
                break;
            case Figure::baseline_comparison:
                if (r.regime == "absolute")
                    groups[{r.family + "/" + r.strategy, r.magnitude}].push_back(
                        r.alg_minus_opt / r.opt);
                break;
            case Figure::node_scaling:
                if (r.strategy == "beta_weighted" && r.regime == "relative")
                    groups[{r.family, static_cast<double>(r.n)}].push_back(r.ratio);
                break;
        }
    }
    std::string out = "x,mean,std,series\n";
    for (const auto& [key, values] : groups) {
        const double mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
        double acc = 0.0;
        for (double v : values) acc += (v - mean) * (v - mean);
        const double sd = values.size() > 1 ? std::sqrt(acc / values.size()) : 0.0;
        out += format_number(key.second) + ',' + format_number(mean) + ',' + format_number(sd) +
               ',' + key.first + '\n';
    }
    return out;
}

}  // namespace predsearch

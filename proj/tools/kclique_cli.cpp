// Command-line front end for the sub-constellation pipeline:
//   generate  synthesize an instance directory (coverage table + metadata)
//   solve     run enumerate -> preprocess -> QUBO -> anneal -> repair once
//   oracle    exact best partition (or best clique on restricted tables)
//   sweep     random hyperparameter search, one CSV row per run
//   regress   OLS report over a sweep results file
//
// Exit codes: 0 success, 2 usage/format error, 3 infeasible, 4 guard refusal.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "kclique/errors.hpp"
#include "kclique/oracle.hpp"
#include "kclique/pipeline.hpp"
#include "kclique/regress.hpp"
#include "kclique/rng.hpp"
#include "kclique/sweep.hpp"
#include "kclique/util.hpp"

using namespace kclique;

namespace {

struct GenerateArgs {
    int n_sats = 9;
    int k = 3;
    int min_group = 3;
    int max_group = 0;  // 0 = min(7, n_sats)
    std::uint64_t seed = 0;
    std::string out;
};

struct SolveArgs {
    std::string instance;
    int k = 0;  // 0 = instance default
    std::string method = "prune";
    int num_nodes = 40;
    int largest_group = 0;  // 0 = instance max_group
    int ga_num_gen = 100;
    int ga_pop_size = 50;
    double ga_mut_rate = 0.05;
    bool ga_flag_used = false;
    int num_reps = 100;
    int anneal_time = 50;
    int prog_time = 1;
    int read_time = 1;
    int spin_rev = 1;
    std::string solver = "DW2X";
    std::string post_proc = "optimize";
    double a_const = 4.0;
    double sweeps_per_us = 20.0;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string export_qubo;
    std::string export_samples;
    std::string export_nodes;
};

int run_generate(const GenerateArgs& a) {
    const int max_group = a.max_group > 0 ? a.max_group : std::min(7, a.n_sats);
    if (a.min_group > max_group || max_group > a.n_sats)
        throw FormatError("generate: need min_group <= max_group <= n_sats");
    if (a.k < 1 || a.k > a.n_sats) throw FormatError("generate: need 1 <= k <= n_sats");
    const ProblemInstance inst = synth_coverage(a.n_sats, a.k, a.min_group, max_group, a.seed);
    save_instance(inst, a.out);
    std::cout << "instance," << a.out << "\n";
    std::cout << "n_sats," << a.n_sats << "\n";
    std::cout << "vertices," << enumerate_vertices(inst).size() << "\n";
    return 0;
}

SolveOptions solve_options(const SolveArgs& a, const ProblemInstance& inst) {
    SolveOptions so;
    so.a_const = a.a_const;
    so.threads = a.threads;
    so.pre.method = parse_method(a.method);
    so.pre.num_nodes = a.num_nodes;
    so.pre.largest_group = a.largest_group > 0 ? a.largest_group : inst.max_group;
    so.pre.seed = mix_seed(a.seed, 1);
    if (so.pre.method == Method::Genetic)
        so.pre.ga = GaConfig{a.ga_num_gen, a.ga_pop_size, a.ga_mut_rate};
    else if (a.ga_flag_used)
        throw FormatError("solve: --ga-* flags require --method genetic");
    so.ann.num_reps = a.num_reps;
    so.ann.anneal_time_us = a.anneal_time;
    so.ann.prog_time_us = a.prog_time;
    so.ann.read_time_us = a.read_time;
    so.ann.spin_rev = a.spin_rev;
    so.ann.solver = parse_solver(a.solver);
    so.ann.post_proc = parse_post_proc(a.post_proc);
    so.ann.sweeps_per_us = a.sweeps_per_us;
    so.ann.seed = mix_seed(a.seed, 2);
    return so;
}

int run_solve(const SolveArgs& a) {
    ProblemInstance inst = load_instance(a.instance);
    if (a.k > 0) inst.k_groups = a.k;
    const SolveOptions so = solve_options(a, inst);

    if (!a.export_qubo.empty() || !a.export_samples.empty() || !a.export_nodes.empty()) {
        // Re-run the visible pipeline stages so exports match the solve.
        const auto vertices = enumerate_vertices(inst, so.pre.largest_group);
        const NodeSelection sel = select_nodes(inst, vertices, so.pre);
        if (!a.export_nodes.empty()) write_nodes_csv(sel.nodes, inst.n_sats, a.export_nodes);
        QuboParams params;
        params.a_const = so.a_const;
        params.k_groups = inst.k_groups;
        const QuboInstance q = build_qubo(sel.nodes, params);
        if (!a.export_qubo.empty()) write_qubo_csv(q, a.export_qubo);
        if (!a.export_samples.empty()) {
            const SampleSet set = anneal(q, so.ann, so.threads);
            write_samples_csv(set, q.n_vars(), a.export_samples);
        }
    }

    const SolveResult res = solve_once(inst, so);
    for (const SatSet& g : res.partition.groups)
        std::cout << format_satset(g, inst.n_sats) << "\n";
    std::cout << "coverage," << fmt_double(res.coverage) << "\n";
    std::cout << "energy," << fmt_double(res.best_energy) << "\n";
    std::cout << "nodes," << res.n_nodes << "\n";
    std::cout << "time_anneal_us," << res.timing.anneal_us << "\n";
    std::cout << "time_prog_us," << res.timing.prog_us << "\n";
    std::cout << "time_read_us," << res.timing.read_us << "\n";
    std::cout << "time_wall_us," << res.timing.wall_us << "\n";
    return 0;
}

int run_oracle(const std::string& instance, int k_override) {
    ProblemInstance inst = load_instance(instance);
    if (k_override > 0) inst.k_groups = k_override;
    if (inst.has_model()) {
        std::cout << "search_space," << partition_count(inst).to_string() << "\n";
        const auto [p, score] = exact_best_partition(inst);
        for (const SatSet& g : p.groups) std::cout << format_satset(g, inst.n_sats) << "\n";
        std::cout << "coverage," << fmt_double(score) << "\n";
    } else {
        // restricted universe: exhaustive clique search over the table rows
        const auto vertices = enumerate_vertices(inst);
        std::cout << "search_space,"
                  << binomial(static_cast<int>(vertices.size()), inst.k_groups).to_string()
                  << "\n";
        const auto [p, score] = exact_best_clique(vertices, inst.k_groups);
        for (const SatSet& g : p.groups) std::cout << format_satset(g, inst.n_sats) << "\n";
        std::cout << "coverage," << fmt_double(score) << "\n";
    }
    return 0;
}

int run_sweep_cmd(const std::string& instance, int runs, std::uint64_t seed,
                  const std::string& out, const SweepOptions& opt) {
    const ProblemInstance inst = load_instance(instance);
    const auto records = run_sweep(inst, runs, seed, opt);
    write_sweep_csv(records, out);
    int failed = 0;
    for (const auto& r : records) failed += r.failed ? 1 : 0;
    std::cout << "runs," << records.size() << "\n";
    std::cout << "failed," << failed << "\n";
    std::cout << "results," << out << "\n";
    return 0;
}

int run_regress(const std::string& in, const std::string& out_csv) {
    const auto records = read_sweep_csv(in);
    const RegressionReport report = regress(records);
    std::cout << render_regression_report(report);
    if (!out_csv.empty()) write_regression_csv(report, out_csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted k-clique sub-constellation pipeline"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* cgen = app.add_subcommand("generate", "synthesize an instance directory");
    cgen->add_option("--n-sats", gen.n_sats, "satellite count")->required()->check(CLI::Range(1, 64));
    cgen->add_option("--k", gen.k, "group count")->check(CLI::Range(1, 64));
    cgen->add_option("--min-group", gen.min_group)->check(CLI::Range(1, 64));
    cgen->add_option("--max-group", gen.max_group)->check(CLI::Range(1, 64));
    cgen->add_option("--seed", gen.seed)->required();
    cgen->add_option("--out", gen.out, "output directory")->required();

    SolveArgs sol;
    CLI::App* csol = app.add_subcommand("solve", "run the full pipeline once");
    csol->add_option("--instance", sol.instance)->required();
    csol->add_option("--k", sol.k)->check(CLI::Range(1, 64));
    csol->add_option("--method", sol.method)->check(CLI::IsMember({"genetic", "random", "prune"}));
    csol->add_option("--num-nodes", sol.num_nodes)->check(CLI::Range(1, 100000));
    csol->add_option("--largest-group", sol.largest_group)->check(CLI::Range(1, 64));
    auto* g1 = csol->add_option("--ga-num-gen", sol.ga_num_gen)->check(CLI::Range(1, 100000));
    auto* g2 = csol->add_option("--ga-pop-size", sol.ga_pop_size)->check(CLI::Range(1, 100000));
    auto* g3 = csol->add_option("--ga-mut-rate", sol.ga_mut_rate)->check(CLI::Range(0.0, 1.0));
    csol->add_option("--num-reps", sol.num_reps)->check(CLI::Range(1, 1000000));
    csol->add_option("--anneal-time", sol.anneal_time)->check(CLI::Range(1, 1000000));
    csol->add_option("--prog-time", sol.prog_time)->check(CLI::Range(1, 1000000));
    csol->add_option("--read-time", sol.read_time)->check(CLI::Range(1, 1000000));
    csol->add_option("--spin-rev", sol.spin_rev)->check(CLI::Range(1, 1000000));
    csol->add_option("--solver", sol.solver)->check(CLI::IsMember({"DW2X", "VFYC"}));
    csol->add_option("--post-proc", sol.post_proc)->check(CLI::IsMember({"optimize", "none"}));
    csol->add_option("--a-const", sol.a_const)->check(CLI::PositiveNumber);
    csol->add_option("--sweeps-per-us", sol.sweeps_per_us)->check(CLI::PositiveNumber);
    csol->add_option("--seed", sol.seed)->required();
    csol->add_option("--threads", sol.threads)->check(CLI::Range(1, 256));
    csol->add_option("--export-qubo", sol.export_qubo);
    csol->add_option("--export-samples", sol.export_samples);
    csol->add_option("--export-nodes", sol.export_nodes);

    std::string oracle_instance;
    int oracle_k = 0;
    CLI::App* cora = app.add_subcommand("oracle", "exact solver at desk scale");
    cora->add_option("--instance", oracle_instance)->required();
    cora->add_option("--k", oracle_k)->check(CLI::Range(1, 64));

    std::string sweep_instance, sweep_out;
    int sweep_runs = 100;
    std::uint64_t sweep_seed = 0;
    SweepOptions sweep_opt;
    sweep_opt.threads = default_threads();
    CLI::App* cswp = app.add_subcommand("sweep", "random hyperparameter search");
    cswp->add_option("--instance", sweep_instance)->required();
    cswp->add_option("--runs", sweep_runs)->required()->check(CLI::Range(1, 1000000));
    cswp->add_option("--seed", sweep_seed)->required();
    cswp->add_option("--out", sweep_out)->required();
    cswp->add_option("--a-const", sweep_opt.a_const)->check(CLI::PositiveNumber);
    cswp->add_option("--sweeps-per-us", sweep_opt.sweeps_per_us)->check(CLI::PositiveNumber);
    cswp->add_option("--threads", sweep_opt.threads)->check(CLI::Range(1, 256));

    std::string regress_in, regress_out_csv;
    CLI::App* creg = app.add_subcommand("regress", "OLS report over sweep results");
    creg->add_option("--in", regress_in)->required();
    creg->add_option("--out-csv", regress_out_csv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    // track whether GA flags were touched, for the dependency rule
    sol.ga_flag_used = g1->count() > 0 || g2->count() > 0 || g3->count() > 0;

    try {
        if (cgen->parsed()) return run_generate(gen);
        if (csol->parsed()) return run_solve(sol);
        if (cora->parsed()) return run_oracle(oracle_instance, oracle_k);
        if (cswp->parsed()) return run_sweep_cmd(sweep_instance, sweep_runs, sweep_seed,
                                                 sweep_out, sweep_opt);
        if (creg->parsed()) return run_regress(regress_in, regress_out_csv);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

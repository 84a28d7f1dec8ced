// Acceptance suite: one check per shipping criterion, one PASS/FAIL line
// each, nonzero exit if anything fails. Heavier end-to-end runs live here
// rather than in the per-module unit tests.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "kclique/anneal.hpp"
#include "kclique/oracle.hpp"
#include "kclique/pipeline.hpp"
#include "kclique/regress.hpp"
#include "kclique/repair.hpp"
#include "kclique/rng.hpp"
#include "kclique/stats.hpp"
#include "kclique/sweep.hpp"
#include "kclique/util.hpp"
#include "test_oracles.hpp"

using namespace kclique;
namespace oracle = testing_oracles;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

double gauss(Rng& rng) {
    const double u1 = std::max(rng.uniform_real(), 1e-300);
    const double u2 = rng.uniform_real();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

// ---- 1. combinatorial exactness -------------------------------------------

Check criterion1() {
    Check c;
    c.require(binomial(32, 8) == BigUint(10518300), "C(32,8) != 10518300");
    c.require(binomial(32, 7) == BigUint(3365856), "C(32,7) != 3365856");
    c.require(stirling2(40, 5).to_scientific(6) == "7.57409e+25",
              "S(40,5) != 7.57409e+25 at 6 significant figures");
    return c;
}

// ---- 2. worked 9-satellite example ----------------------------------------

Check criterion2() {
    Check c;
    const auto f = oracle::make_fig1();
    const Partition abe{{f.a.sats, f.b.sats, f.e.sats}};
    const Partition acd{{f.a.sats, f.c.sats, f.d.sats}};
    const double abe_mean = partition_coverage(abe, f.inst);
    const double acd_mean = partition_coverage(acd, f.inst);
    c.require(std::abs(abe_mean - 0.7466666666666667) < 1e-12, "ABE mean coverage wrong");
    c.require(std::abs(acd_mean - 0.56) < 1e-12, "ACD mean coverage wrong");

    int hits = 0;
    for (int s = 0; s < 20; ++s) {
        SolveOptions so;
        so.a_const = 4.0;
        so.pre.method = Method::Prune;
        so.pre.num_nodes = 5;
        so.pre.largest_group = 3;
        so.pre.seed = mix_seed(500 + static_cast<std::uint64_t>(s), 1);
        so.ann.num_reps = 100;
        so.ann.anneal_time_us = 50;
        so.ann.seed = mix_seed(500 + static_cast<std::uint64_t>(s), 2);
        const SolveResult res = solve_once(f.inst, so);
        bool is_abe = res.partition.groups.size() == 3;
        for (const SatSet& g : res.partition.groups)
            is_abe = is_abe && (g == f.a.sats || g == f.b.sats || g == f.e.sats);
        if (is_abe) ++hits;
    }
    c.note("ABE hits " + std::to_string(hits) + "/20");
    c.require(hits >= 18, "pipeline must return ABE in >= 90% of seeded runs");
    return c;
}

// ---- 3. feasible-energy identity ------------------------------------------

Check criterion3() {
    Check c;
    Rng rng(333);
    int done = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 9 + static_cast<int>(rng.below(4));  // 9..12
        const ProblemInstance inst =
            synth_coverage(n, 3, 3, 7, 10000 + static_cast<std::uint64_t>(trial));

        // two random valid 3-partitions by shuffle-and-cut
        auto random_partition = [&]() {
            std::vector<int> order(static_cast<std::size_t>(n));
            for (int s = 0; s < n; ++s) order[static_cast<std::size_t>(s)] = s + 1;
            rng.shuffle(order);
            std::vector<int> sizes = {3, 3, n - 6};
            while (sizes[2] > 7) {  // keep every group inside [3, 7]
                ++sizes[static_cast<std::size_t>(rng.below(2))];
                --sizes[2];
            }
            Partition p;
            std::size_t pos = 0;
            for (int sz : sizes) {
                SatSet g;
                for (int t = 0; t < sz; ++t) g = g.with(order[pos++]);
                p.groups.push_back(g);
            }
            return p;
        };
        const Partition p1 = random_partition();
        const Partition p2 = random_partition();

        // vertex list: both partitions' groups plus filler
        std::vector<Vertex> verts;
        auto add_group = [&](SatSet g) {
            for (const Vertex& v : verts)
                if (v.sats == g) return;
            verts.push_back({g, inst.coverage(g)});
        };
        for (const SatSet& g : p1.groups) add_group(g);
        for (const SatSet& g : p2.groups) add_group(g);
        const auto pool = enumerate_vertices(inst);
        for (std::size_t i = 0; i < pool.size() && verts.size() < 24; i += 97)
            add_group(pool[i].sats);

        QuboParams params;
        params.a_const = 4.0;
        params.k_groups = 3;
        const QuboInstance q = build_qubo(verts, params);
        const double gap = feasible_energy_gap(q, p1, p2);
        const double expect =
            -4.0 * (partition_coverage_sum(p1, inst) - partition_coverage_sum(p2, inst));
        worst = std::max(worst, std::abs(gap - expect));
        ++done;
    }
    c.note("pairs " + std::to_string(done) + ", worst |gap + A*dSum| = " + fmt_sci(worst, 2));
    c.require(done == 100, "expected 100 pairs");
    c.require(worst <= 1e-9, "energy-gap identity violated beyond 1e-9");
    return c;
}

// ---- 4. oracle equivalence ------------------------------------------------

Check criterion4() {
    Check c;
    int exact_instances = 0;
    for (int i = 0; i < 10; ++i) {
        const int n = 9 + (i % 4);  // 9..12
        const ProblemInstance inst =
            synth_coverage(n, 3, 3, 7, 4242 + static_cast<std::uint64_t>(i));
        const auto [opt, opt_score] = exact_best_partition(inst);

        double best = 0.0;
        for (int s = 0; s < 20; ++s) {
            SolveOptions so;
            so.a_const = 4.0;
            so.pre.method = Method::Genetic;
            so.pre.num_nodes = 40;
            so.pre.largest_group = inst.max_group;
            so.pre.ga = GaConfig{200, 100, 0.1};
            so.pre.seed = mix_seed(7000 + static_cast<std::uint64_t>(100 * i + s), 1);
            so.ann.num_reps = 100;
            so.ann.anneal_time_us = 50;
            so.ann.seed = mix_seed(7000 + static_cast<std::uint64_t>(100 * i + s), 2);
            best = std::max(best, solve_once(inst, so).coverage);
            if (best >= opt_score - 1e-9) break;  // already exact
        }
        c.require(best >= 0.98 * opt_score,
                  "instance " + std::to_string(i) + " below 0.98 of oracle");
        c.require(best <= opt_score + 1e-9,
                  "instance " + std::to_string(i) + " beat the exact oracle");
        if (best >= opt_score - 1e-9) ++exact_instances;
    }
    c.note("exact on " + std::to_string(exact_instances) + "/10 instances");
    c.require(exact_instances >= 7, "need exact oracle match on >= 7/10 instances");
    return c;
}

// ---- 5. repair guarantees --------------------------------------------------

Check criterion5() {
    Check c;
    int checked = 0;
    for (int i = 0; i < 5; ++i) {
        const int n = 10 + (i % 3);  // 10..12
        const ProblemInstance inst =
            synth_coverage(n, 3, 3, 7, 8800 + static_cast<std::uint64_t>(i));
        const auto verts = enumerate_vertices(inst);
        PreprocessConfig pc;
        pc.num_nodes = 40;
        pc.largest_group = 7;
        pc.seed = static_cast<std::uint64_t>(i);
        const auto sel = select_random(inst, verts, pc);
        QuboParams params;
        params.a_const = 4.0;
        params.k_groups = 3;
        const QuboInstance q = build_qubo(sel.nodes, params);

        Rng rng(660 + static_cast<std::uint64_t>(i));
        for (int t = 0; t < 1000; ++t) {
            std::vector<std::uint8_t> x(static_cast<std::size_t>(q.n_vars()));
            const double density = rng.uniform_real(0.02, 0.6);
            for (auto& b : x) b = rng.bernoulli(density) ? 1 : 0;
            const Partition p = repair(x, q, inst);
            if (!oracle::valid_partition(p.groups, n, 3)) {
                c.require(false, "invalid repair output at instance " + std::to_string(i));
                return c;
            }
            const Partition again = repair_groups(p.groups, inst);
            std::vector<std::uint64_t> a, b;
            for (const SatSet& g : p.groups) a.push_back(g.bits);
            for (const SatSet& g : again.groups) b.push_back(g.bits);
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) {
                c.require(false, "repair not idempotent at instance " + std::to_string(i));
                return c;
            }
            ++checked;
        }

        // valid inputs are never degraded
        Rng vr(770 + static_cast<std::uint64_t>(i));
        for (int t = 0; t < 50; ++t) {
            std::vector<int> order(static_cast<std::size_t>(n));
            for (int s = 0; s < n; ++s) order[static_cast<std::size_t>(s)] = s + 1;
            vr.shuffle(order);
            std::vector<SatSet> groups(3);
            std::size_t pos = 0;
            for (int g = 0; g < 3; ++g)
                for (int t2 = 0; t2 < (g < n % 3 ? n / 3 + 1 : n / 3); ++t2)
                    groups[static_cast<std::size_t>(g)] =
                        groups[static_cast<std::size_t>(g)].with(order[pos++]);
            const double before = partition_coverage(Partition{groups}, inst);
            const Partition p = repair_groups(groups, inst);
            c.require(partition_coverage(p, inst) >= before - 1e-12,
                      "valid input degraded at instance " + std::to_string(i));
        }
    }
    c.note(std::to_string(checked) + " random samples, all valid and idempotent");
    return c;
}

// ---- 6. annealer soundness --------------------------------------------------

Check criterion6() {
    Check c;
    int hits = 0;
    for (int t = 0; t < 50; ++t) {
        Rng rng(3100 + static_cast<std::uint64_t>(t));
        const int n = 8 + static_cast<int>(rng.below(9));  // 8..16
        const QuboInstance q = oracle::make_random_qubo(n, rng);
        const auto [bx, be] = oracle::exhaustive_min(q);
        AnnealConfig cfg;
        cfg.num_reps = 100;
        cfg.anneal_time_us = 50;
        cfg.seed = 9100 + static_cast<std::uint64_t>(t);
        if (std::abs(anneal(q, cfg).best_sample().energy - be) < 1e-9) ++hits;
    }
    c.note("exhaustive-minimum hits " + std::to_string(hits) + "/50");
    c.require(hits >= 48, "SA must find the exhaustive minimum in >= 95% of runs");

    // gauge round trip preserves energies to 1e-9
    Rng rng(77);
    const QuboInstance q = oracle::make_random_qubo(12, rng);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        std::vector<std::uint8_t> mask(12), x(12);
        for (auto& b : mask) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
        for (auto& b : x) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
        const QuboInstance g2 = gauge_transform(gauge_transform(q, mask), mask);
        worst = std::max(worst, std::abs(energy(q, x) - energy(g2, x)));
        std::vector<std::uint8_t> y(12);
        for (int i = 0; i < 12; ++i)
            y[static_cast<std::size_t>(i)] =
                x[static_cast<std::size_t>(i)] ^ mask[static_cast<std::size_t>(i)];
        worst = std::max(worst, std::abs(energy(q, x) - energy(gauge_transform(q, mask), y)));
    }
    c.require(worst <= 1e-9, "gauge round trip drifted by " + fmt_sci(worst, 2));

    // optimize post-processing never increases the best energy at fixed seed
    for (int t = 0; t < 10; ++t) {
        Rng r2(5200 + static_cast<std::uint64_t>(t));
        const QuboInstance q2 = oracle::make_random_qubo(12, r2);
        AnnealConfig plain;
        plain.num_reps = 50;
        plain.anneal_time_us = 5;
        plain.seed = 6300 + static_cast<std::uint64_t>(t);
        AnnealConfig opt = plain;
        opt.post_proc = PostProc::Optimize;
        c.require(anneal(q2, opt).best_sample().energy <=
                      anneal(q2, plain).best_sample().energy + 1e-12,
                  "optimize increased the best energy");
    }
    return c;
}

// ---- 7. qualitative hyperparameter finding ---------------------------------

Check criterion7() {
    Check c;
    const ProblemInstance inst = oracle::make_plane_instance(4, 3, 3, 3, 7, 42, true);
    SweepOptions so;
    so.sweeps_per_us = 1.0;
    so.threads = default_threads();
    const auto recs = run_sweep(inst, 300, 2026, so);

    double sum[3] = {0, 0, 0};
    int cnt[3] = {0, 0, 0};
    for (const auto& r : recs) {
        if (r.failed) continue;
        sum[static_cast<int>(r.method)] += r.coverage;
        ++cnt[static_cast<int>(r.method)];
    }
    const double mean_genetic = sum[0] / cnt[0];
    const double mean_random = sum[1] / cnt[1];
    const double mean_prune = sum[2] / cnt[2];
    c.note("means prune " + fmt_fixed(mean_prune, 4) + " >= genetic " +
           fmt_fixed(mean_genetic, 4) + " >= random " + fmt_fixed(mean_random, 4));
    c.require(mean_prune >= mean_genetic && mean_genetic >= mean_random,
              "method means out of order");

    // one-sided Welch test for prune > random
    double ssp = 0.0, ssr = 0.0;
    for (const auto& r : recs) {
        if (r.failed) continue;
        if (r.method == Method::Prune)
            ssp += (r.coverage - mean_prune) * (r.coverage - mean_prune);
        if (r.method == Method::Random)
            ssr += (r.coverage - mean_random) * (r.coverage - mean_random);
    }
    const double vp = ssp / (cnt[2] - 1) / cnt[2];
    const double vr = ssr / (cnt[1] - 1) / cnt[1];
    const double t = (mean_prune - mean_random) / std::sqrt(vp + vr);
    const double df =
        (vp + vr) * (vp + vr) / (vp * vp / (cnt[2] - 1) + vr * vr / (cnt[1] - 1));
    const double p_one_sided = 1.0 - student_t_cdf(t, df);
    c.note("welch one-sided p = " + fmt_sci(p_one_sided, 2));
    c.require(p_one_sided < 0.05, "prune > random not significant at 0.05");

    const RegressionReport rep = regress(recs);
    double est_prune = 0.0, est_genetic = 0.0;
    for (const auto& row : rep.rows) {
        if (row.name == "Prune") est_prune = row.estimate;
        if (row.name == "Genetic") est_genetic = row.estimate;
    }
    c.note("estimates prune " + fmt_sci(est_prune, 3) + ", genetic " + fmt_sci(est_genetic, 3));
    c.require(est_prune > 0.0 && est_genetic > 0.0, "method estimates must be positive");
    c.require(est_prune > est_genetic, "prune estimate must exceed genetic");
    return c;
}

// ---- 8. regression correctness ----------------------------------------------

Check criterion8() {
    Check c;
    int good_trials = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(12000 + static_cast<std::uint64_t>(trial));
        const int n = 200;
        const std::vector<double> beta_true = {1.0, 2.0, -1.5, 0.25, 0.0};
        std::vector<std::vector<double>> cols(5, std::vector<double>(n));
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) {
            cols[0][static_cast<std::size_t>(i)] = 1.0;
            for (int j = 1; j < 5; ++j)
                cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                    rng.uniform_real(-2.0, 2.0);
            double mean = 0.0;
            for (int j = 0; j < 5; ++j)
                mean += beta_true[static_cast<std::size_t>(j)] *
                        cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            y[static_cast<std::size_t>(i)] = mean + 0.5 * gauss(rng);
        }
        const OlsFit fit = ols_fit(cols, y);
        bool all_in = true;
        for (int j = 0; j < 5; ++j)
            all_in = all_in && std::abs(fit.beta[static_cast<std::size_t>(j)] -
                                        beta_true[static_cast<std::size_t>(j)]) <=
                                   3.0 * fit.std_error[static_cast<std::size_t>(j)];
        double rsum = 0.0;
        for (double r : fit.residuals) rsum += r;
        all_in = all_in && std::abs(rsum) <= 1e-8 * n;
        if (all_in) ++good_trials;
    }
    c.note("coefficient recovery in " + std::to_string(good_trials) + "/100 trials");
    c.require(good_trials >= 95, "need >= 95/100 trials within 3 standard errors");

    // aliasing fires exactly for structurally collinear columns
    Rng rng(55);
    auto rows = [&](bool vary_method) {
        std::vector<SweepRecord> recs;
        for (int i = 0; i < 150; ++i) {
            SweepRecord r;
            r.run_id = i;
            r.method = vary_method ? static_cast<Method>(rng.below(3)) : Method::Random;
            if (r.method == Method::Genetic) {
                r.num_gen = static_cast<int>(rng.uniform_int(10, 1000));
                r.pop_size = static_cast<int>(rng.uniform_int(10, 1000));
                r.mut_rate = rng.uniform_real(0.01, 0.25);
            }
            r.num_nodes = static_cast<int>(rng.uniform_int(30, 49));
            r.largest_group = static_cast<int>(rng.uniform_int(4, 7));
            r.num_reps = static_cast<int>(rng.uniform_int(10, 10000));
            r.anneal_time_us = static_cast<int>(rng.uniform_int(5, 2000));
            r.prog_time_us = static_cast<int>(rng.uniform_int(1, 10000));
            r.read_time_us = static_cast<int>(rng.uniform_int(1, 10000));
            r.spin_rev = static_cast<int>(rng.uniform_int(1, r.num_reps));
            r.solver = rng.below(2) ? Solver::VFYC : Solver::DW2X;
            r.post_proc = PostProc::Optimize;
            r.coverage = 0.5 + 0.001 * r.largest_group + 0.01 * gauss(rng);
            recs.push_back(r);
        }
        return recs;
    };
    const RegressionReport full = regress(rows(true));
    const std::vector<std::string> expect_full = {"Random", "VFYC"};
    c.require(full.aliased == expect_full, "full-rank fit must alias only the baselines");

    const RegressionReport constant = regress(rows(false));
    bool prune_na = false, genetic_na = false, nodes_fit = false;
    for (const auto& row : constant.rows) {
        if (row.name == "Prune") prune_na = row.aliased;
        if (row.name == "Genetic") genetic_na = row.aliased;
        if (row.name == "NumNodes") nodes_fit = !row.aliased;
    }
    c.require(prune_na && genetic_na && nodes_fit,
              "constant-method fit must alias exactly the method dummies");
    return c;
}

// ---- 9. CLI determinism ------------------------------------------------------

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

CmdResult run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = cli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    CmdResult res;
    if (!pipe) return res;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) res.output.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Check criterion9() {
    Check c;
    const char* cli_env = std::getenv("KCLIQUE_CLI");
    if (!cli_env) {
        c.require(false, "KCLIQUE_CLI not set");
        return c;
    }
    const std::string cli = cli_env;
    const fs::path dir = fs::temp_directory_path() / "kq_accept_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // generate twice: identical files
    const std::string gen = "generate --n-sats 10 --k 3 --min-group 3 --max-group 5 --seed 42";
    const auto g1 = run_cli(cli, gen + " --out " + (dir / "i1").string());
    const auto g2 = run_cli(cli, gen + " --out " + (dir / "i2").string());
    c.require(g1.exit_code == 0 && g2.exit_code == 0, "generate failed");
    for (const char* f : {"instance.csv", "coverage.csv", "efficacies.csv"})
        c.require(slurp(dir / "i1" / f) == slurp(dir / "i2" / f),
                  std::string("generate not reproducible: ") + f);

    // solve: identical stdout across reruns and thread counts, both methods
    for (const std::string method : {"prune", "genetic"}) {
        std::string flags = "solve --instance " + (dir / "i1").string() + " --method " + method +
                            " --num-nodes 30 --num-reps 40 --anneal-time 20 --spin-rev 5 --seed 7";
        if (method == "genetic") flags += " --ga-num-gen 30 --ga-pop-size 20 --ga-mut-rate 0.1";
        const auto a = run_cli(cli, flags + " --threads 1");
        const auto b = run_cli(cli, flags + " --threads 1");
        const auto p = run_cli(cli, flags + " --threads 2");
        c.require(a.exit_code == 0, "solve failed (" + method + ")");
        c.require(a.output == b.output, "solve rerun differs (" + method + ")");
        c.require(a.output == p.output, "solve parallel differs (" + method + ")");
    }

    // oracle: identical stdout
    const auto o1 = run_cli(cli, "oracle --instance " + (dir / "i1").string());
    const auto o2 = run_cli(cli, "oracle --instance " + (dir / "i1").string());
    c.require(o1.exit_code == 0 && o1.output == o2.output, "oracle not reproducible");

    // sweep: identical CSV across reruns and thread counts
    const std::string sweep = "sweep --instance " + (dir / "i1").string() +
                              " --runs 4 --seed 11 --sweeps-per-us 0.02";
    const auto s1 = run_cli(cli, sweep + " --threads 1 --out " + (dir / "s1.csv").string());
    const auto s2 = run_cli(cli, sweep + " --threads 2 --out " + (dir / "s2.csv").string());
    c.require(s1.exit_code == 0 && s2.exit_code == 0, "sweep failed");
    c.require(slurp(dir / "s1.csv") == slurp(dir / "s2.csv"), "sweep CSV differs across threads");

    // regress on too-few rows: both invocations must refuse identically
    const auto r1 = run_cli(cli, "regress --in " + (dir / "s1.csv").string());
    const auto r2 = run_cli(cli, "regress --in " + (dir / "s2.csv").string());
    c.require(r1.exit_code == r2.exit_code && r1.output == r2.output,
              "regress behavior differs across identical inputs");

    // a regressable sweep for the full report path
    const std::string sweep2 = "sweep --instance " + (dir / "i1").string() +
                               " --runs 20 --seed 12 --sweeps-per-us 0.02";
    const auto s3 = run_cli(cli, sweep2 + " --threads 2 --out " + (dir / "s3.csv").string());
    c.require(s3.exit_code == 0, "sweep (20 runs) failed");
    const auto r3 = run_cli(cli, "regress --in " + (dir / "s3.csv").string());
    const auto r4 = run_cli(cli, "regress --in " + (dir / "s3.csv").string());
    c.require(r3.exit_code == 0 && r3.output == r4.output, "regress report not reproducible");

    fs::remove_all(dir);
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        double budget_s;  // stated runtime bound, 0 = none
        std::function<Check()> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "combinatorial exactness", 1.0, criterion1},
        {2, "9-satellite worked example", 10.0, criterion2},
        {3, "feasible-energy identity", 0.0, criterion3},
        {4, "oracle equivalence", 300.0, criterion4},
        {5, "repair guarantees", 0.0, criterion5},
        {6, "annealer soundness", 0.0, criterion6},
        {7, "qualitative hyperparameter finding", 900.0, criterion7},
        {8, "regression correctness", 0.0, criterion8},
        {9, "CLI determinism", 0.0, criterion9},
    };

    int failures = 0;
    for (const auto& crit : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = crit.fn();
        } catch (const std::exception& e) {
            c.pass = false;
            c.note(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (crit.budget_s > 0.0 && secs > crit.budget_s) {
            c.pass = false;
            c.note("runtime " + fmt_fixed(secs, 1) + "s exceeds " + fmt_fixed(crit.budget_s, 0) +
                   "s budget");
        }
        std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", c.pass ? "PASS" : "FAIL", crit.number,
                    crit.name, secs, c.detail.empty() ? "" : " -- ", c.detail.c_str());
        std::fflush(stdout);
        if (!c.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
